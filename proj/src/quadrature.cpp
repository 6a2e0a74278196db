// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace wrmt {

namespace {

constexpr int kNewtonIters = 100;
constexpr double kNewtonTol = 1e-15;

// Eigenvalues and first eigenvector components of a symmetric tridiagonal
// matrix (diagonal d, off-diagonal e[1..m-1]) by implicit QL with Wilkinson
// shifts. Used to seed Gauss rules (Golub-Welsch).
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z0) {
  const int m = static_cast<int>(d.size());
  z0.assign(m, 0.0);
  z0[0] = 1.0;
  for (int i = 1; i < m; ++i) e[i - 1] = e[i];
  e[m - 1] = 0.0;
  for (int l = 0; l < m; ++l) {
    int iter = 0;
    int mm;
    do {
      for (mm = l; mm < m - 1; ++mm) {
        const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
        if (std::abs(e[mm]) <= 1e-16 * dd) break;
      }
      if (mm != l) {
        if (++iter > 200) throw std::runtime_error("tridiag_ql: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = mm - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          e[i + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[i + 1] -= p;
            e[mm] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
          f = z0[i + 1];
          z0[i + 1] = s * z0[i] + c * f;
          z0[i] = c * z0[i] - s * f;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[mm] = 0.0;
      }
    } while (mm != l);
  }
}

}  // namespace

Quadrature gauss_hermite(int m) {
  if (m < 1) throw std::invalid_argument("gauss_hermite: m < 1");
  // Golub-Welsch seeds, then Newton polish on the Hermite functions
  // (orthonormal polynomials times exp(-z^2/2)), which stay bounded.
  std::vector<double> d(m, 0.0), e(m, 0.0), z0;
  for (int k = 1; k < m; ++k) e[k] = std::sqrt(0.5 * k);
  tridiag_ql(d, e, z0);
  std::vector<double> roots = d;
  std::sort(roots.begin(), roots.end());
  Quadrature q;
  q.kind = QuadKind::GaussHermite;
  q.nodes.assign(m, 0.0);
  q.weights.assign(m, 0.0);
  const double pim4 = std::pow(M_PI, -0.25);
  for (int i = 0; i < m; ++i) {
    double z = roots[i];
    double pp = 0.0;
    for (int it = 0; it < 4; ++it) {
      double p1 = pim4 * std::exp(-0.5 * z * z), p2 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * m) * p2;
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) <= kNewtonTol * std::max(1.0, std::abs(z))) break;
    }
    q.nodes[i] = z;
    q.weights[i] = 2.0 / (pp * pp) * std::exp(-z * z);
  }
  // Enforce exact symmetry.
  for (int i = 0; i < m / 2; ++i) {
    const double x = 0.5 * (q.nodes[m - 1 - i] - q.nodes[i]);
    const double w = 0.5 * (q.weights[m - 1 - i] + q.weights[i]);
    q.nodes[i] = -x;
    q.nodes[m - 1 - i] = x;
    q.weights[i] = q.weights[m - 1 - i] = w;
  }
  if (m % 2) q.nodes[m / 2] = 0.0;
  return q;
}

Quadrature gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: m < 1");
  Quadrature q;
  q.kind = QuadKind::GaussLegendre;
  q.nodes.assign(m, 0.0);
  q.weights.assign(m, 0.0);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < kNewtonIters; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = m * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= kNewtonTol) break;
    }
    q.nodes[i] = -z;
    q.nodes[m - 1 - i] = z;
    q.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    q.weights[m - 1 - i] = q.weights[i];
  }
  if (m % 2) q.nodes[m / 2] = 0.0;
  return q;
}

Quadrature gauss_laguerre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_laguerre: m < 1");
  Quadrature q;
  q.kind = QuadKind::GaussLaguerre;
  q.nodes.assign(m, 0.0);
  q.weights.assign(m, 0.0);
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = 3.0 / (1.0 + 2.4 * m);
    else if (i == 1)
      z += 15.0 / (1.0 + 2.5 * m);
    else {
      const double ai = i - 1;
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - q.nodes[i - 2]);
    }
    double p1 = 0.0, p2 = 0.0, pp = 0.0;
    for (int it = 0; it < kNewtonIters; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1);
      }
      pp = m * (p1 - p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= kNewtonTol * std::max(1.0, z)) break;
    }
    q.nodes[i] = z;
    // w = z / ((m+1)^2 L_{m+1}(z)^2) written with L_{m-1} = p2.
    q.weights[i] = -1.0 / (pp * m * p2);
  }
  return q;
}

Quadrature tanh_sinh(double h, double t_max) {
  Quadrature q;
  q.kind = QuadKind::TanhSinh;
  const int kmax = static_cast<int>(std::floor(t_max / h));
  for (int k = -kmax; k <= kmax; ++k) {
    const double t = k * h;
    const double s = 0.5 * M_PI * std::sinh(t);
    const double x = std::tanh(s);
    const double ch = std::cosh(s);
    const double w = h * 0.5 * M_PI * std::cosh(t) / (ch * ch);
    if (std::abs(x) >= 1.0 || w == 0.0) continue;
    q.nodes.push_back(x);
    q.weights.push_back(w);
  }
  return q;
}

Quadrature shifted_hermite(int m, double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("shifted_hermite: alpha must be positive");
  const Quadrature& g = cached_gauss_hermite(m);
  Quadrature q;
  q.kind = QuadKind::GaussHermite;
  const double sa = std::sqrt(alpha);
  const double centre = beta / (2.0 * alpha);
  const double scale = std::exp(beta * beta / (4.0 * alpha)) / sa;
  q.nodes.resize(m);
  q.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    q.nodes[i] = g.nodes[i] / sa + centre;
    q.weights[i] = g.weights[i] * scale;
  }
  return q;
}

Quadrature legendre_on(int m, double lo, double hi) {
  const Quadrature& g = cached_gauss_legendre(m);
  Quadrature q;
  q.kind = QuadKind::GaussLegendre;
  const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
  q.nodes.resize(m);
  q.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    q.nodes[i] = mid + hw * g.nodes[i];
    q.weights[i] = hw * g.weights[i];
  }
  return q;
}

Quadrature composite_legendre(int m, int panels, double lo, double hi) {
  if (panels < 1) throw std::invalid_argument("composite_legendre: panels < 1");
  const Quadrature& g = cached_gauss_legendre(m);
  Quadrature q;
  q.kind = QuadKind::Composite;
  const double w = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * w;
    for (int i = 0; i < m; ++i) {
      q.nodes.push_back(mid + 0.5 * w * g.nodes[i]);
      q.weights.push_back(0.5 * w * g.weights[i]);
    }
  }
  return q;
}

namespace {

template <Quadrature (*Build)(int)>
const Quadrature& cached(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Quadrature>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<Quadrature>(Build(m));
  return *slot;
}

}  // namespace

const Quadrature& cached_gauss_hermite(int m) { return cached<gauss_hermite>(m); }
const Quadrature& cached_gauss_legendre(int m) { return cached<gauss_legendre>(m); }
const Quadrature& cached_gauss_laguerre(int m) { return cached<gauss_laguerre>(m); }

}  // namespace wrmt
