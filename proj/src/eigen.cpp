// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wrmt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double frobenius(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Solve (a - shift) x = b by Gaussian elimination with partial pivoting.
// A zero pivot is replaced by a tiny value; inverse iteration relies on it.
std::vector<cplx> shifted_solve(const CMatrix& a, cplx shift, std::vector<cplx> b, double tiny) {
  const int n = a.rows();
  CMatrix m = a;
  for (int i = 0; i < n; ++i) m(i, i) -= shift;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (piv != k) {
      m.swap_rows(k, piv);
      std::swap(b[k], b[piv]);
    }
    if (std::abs(m(k, k)) < tiny) m(k, k) = tiny;
    for (int i = k + 1; i < n; ++i) {
      const cplx f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      b[i] -= f * b[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx s = b[i];
    for (int j = i + 1; j < n; ++j) s -= m(i, j) * b[j];
    b[i] = s / m(i, i);
  }
  return b;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const CMatrix& a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  // Real symmetric embedding [[Re, -Im], [Im, Re]]; each eigenvalue appears twice.
  const int m = 2 * n;
  RMatrix s(m, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      s(i, j) = s(n + i, n + j) = v.real();
      s(n + i, j) = v.imag();
      s(i, n + j) = -v.imag();
    }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int i = 0; i < m; ++i) {
      diag += s(i, i) * s(i, i);
      for (int j = i + 1; j < m; ++j) off += s(i, j) * s(i, j);
    }
    if (off == 0.0) break;
    const double norm = std::sqrt(diag + 2.0 * off);
    for (int p = 0; p < m - 1; ++p)
      for (int q = p + 1; q < m; ++q) {
        const double apq = s(p, q);
        if (std::abs(apq) <= 1e-3 * kEps * norm) {
          s(p, q) = s(q, p) = 0.0;
          continue;
        }
        const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
        for (int k = 0; k < m; ++k) {
          const double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < m; ++k) {
          const double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        s(p, q) = s(q, p) = 0.0;
      }
    if (sweep == 99) throw EigenError("Jacobi sweeps did not converge");
  }
  std::vector<double> ev(m);
  for (int i = 0; i < m; ++i) ev[i] = s(i, i);
  std::sort(ev.begin(), ev.end());
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = 0.5 * (ev[2 * i] + ev[2 * i + 1]);
  return out;
}

std::vector<cplx> general_eigenvalues(const CMatrix& in) {
  const int n = in.rows();
  if (in.cols() != n) throw std::invalid_argument("general_eigenvalues: matrix not square");
  CMatrix h = in;
  // Householder reduction to upper Hessenberg form.
  for (int k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (int i = k + 1; i < n; ++i) norm += std::norm(h(i, k));
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const cplx x0 = h(k + 1, k);
    const cplx phase = std::abs(x0) > 0 ? x0 / std::abs(x0) : cplx(1.0);
    std::vector<cplx> v(n, 0.0);
    for (int i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] += phase * norm;
    double vn = 0.0;
    for (int i = k + 1; i < n; ++i) vn += std::norm(v[i]);
    vn = std::sqrt(vn);
    for (int i = k + 1; i < n; ++i) v[i] /= vn;
    for (int j = 0; j < n; ++j) {  // H <- (I - 2 v v^H) H
      cplx d = 0.0;
      for (int i = k + 1; i < n; ++i) d += std::conj(v[i]) * h(i, j);
      for (int i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i] * d;
    }
    for (int i = 0; i < n; ++i) {  // H <- H (I - 2 v v^H)
      cplx d = 0.0;
      for (int j = k + 1; j < n; ++j) d += h(i, j) * v[j];
      for (int j = k + 1; j < n; ++j) h(i, j) -= 2.0 * d * std::conj(v[j]);
    }
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  std::vector<cplx> eig(n);
  const double scale = std::max(frobenius(in), 1e-300);
  int hi = n - 1, iter = 0, total = 0;
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    int l = hi;
    while (l > 0) {
      const double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (std::abs(h(l, l - 1)) <= kEps * (s > 0 ? s : scale)) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > 60 || ++total > 60 * n) throw EigenError("QR iteration did not converge");
    cplx shift;
    if (iter % 11 == 10) {
      shift = h(hi, hi) + std::abs(h(hi, hi - 1));  // exceptional shift
    } else {
      const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
      const cplx tr = 0.5 * (a + d);
      const cplx disc = std::sqrt((a - tr) * (a - tr) + b * c);
      const cplx m1 = tr + disc, m2 = tr - disc;
      shift = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }
    // Implicit single-shift QR sweep on the active block l..hi.
    cplx x = h(l, l) - shift, y = h(l + 1, l);
    for (int k = l; k < hi; ++k) {
      if (k > l) {
        x = h(k, k - 1);
        y = h(k + 1, k - 1);
      }
      const double r = std::hypot(std::abs(x), std::abs(y));
      if (r == 0.0) continue;
      double c;
      cplx s;
      if (std::abs(x) == 0.0) {
        c = 0.0;
        s = 1.0;
      } else {
        c = std::abs(x) / r;
        s = (x / std::abs(x)) * std::conj(y) / r;
      }
      const int jlo = std::max(l, k - 1);
      for (int j = jlo; j <= hi; ++j) {
        const cplx a = h(k, j), b = h(k + 1, j);
        h(k, j) = c * a + s * b;
        h(k + 1, j) = -std::conj(s) * a + c * b;
      }
      const int ihi = std::min(hi, k + 2);
      for (int i = l; i <= ihi; ++i) {
        const cplx a = h(i, k), b = h(i, k + 1);
        h(i, k) = a * c + b * std::conj(s);
        h(i, k + 1) = -a * s + b * c;
      }
      if (k > l) h(k + 1, k - 1) = 0.0;
    }
  }
  return eig;
}

std::vector<cplx> eigenvector(const CMatrix& a, cplx lambda) {
  const int n = a.rows();
  const double scale = std::max(frobenius(a), 1e-300);
  const cplx shift = lambda + cplx(1e-10 * scale, 0.0);
  std::vector<cplx> v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx(1.0 + 0.1 * i, 0.05 * i);
  for (int it = 0; it < 4; ++it) {
    v = shifted_solve(a, shift, v, kEps * scale);
    double nv = 0.0;
    for (const cplx& c : v) nv += std::norm(c);
    nv = std::sqrt(nv);
    for (cplx& c : v) c /= nv;
  }
  return v;
}

}  // namespace wrmt
