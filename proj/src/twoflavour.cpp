// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/twoflavour.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "wrmt/quadrature.hpp"
#include "wrmt/skewpoly.hpp"
#include "wrmt/special.hpp"

namespace wrmt {

namespace {

// Sparse polynomial in r11 r12 r21 r22 l11 l12 l21 l22, one byte per exponent.
using Key = std::uint64_t;
using SparsePoly = std::unordered_map<Key, cplx>;

int exponent(Key k, int v) { return static_cast<int>((k >> (8 * v)) & 0xff); }
Key make_key(const std::array<int, 8>& e) {
  Key k = 0;
  for (int v = 0; v < 8; ++v) k |= static_cast<Key>(e[v]) << (8 * v);
  return k;
}
int r_degree(Key k) { return exponent(k, 0) + exponent(k, 1) + exponent(k, 2) + exponent(k, 3); }
int l_degree(Key k) { return exponent(k, 4) + exponent(k, 5) + exponent(k, 6) + exponent(k, 7); }

void add_mono(SparsePoly& p, std::initializer_list<int> vars, cplx c) {
  std::array<int, 8> e{};
  for (int v : vars) ++e[v];
  p[make_key(e)] += c;
}

SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, int max_r, int max_l) {
  SparsePoly out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      const Key k = ka + kb;  // no carries: each exponent stays below 256
      if (r_degree(k) <= max_r && l_degree(k) <= max_l) out[k] += ca * cb;
    }
  return out;
}

// Expansion of det(d/dX)^k for a 2x2 block starting at variable `off`,
// applied at the origin: coefficient times the monomial it extracts.
std::vector<std::pair<Key, double>> det_power(int k, int off) {
  std::vector<std::pair<Key, double>> out;
  for (int j = 0; j <= k; ++j) {
    std::array<int, 8> e{};
    e[off] = k - j;
    e[off + 1] = j;
    e[off + 2] = j;
    e[off + 3] = k - j;
    const double fk = factorial(k - j), fj = factorial(j);
    out.emplace_back(make_key(e), binomial(k, j) * (j % 2 ? -1.0 : 1.0) * fk * fk * fj * fj);
  }
  return out;
}

}  // namespace

cplx omega_two_flavour(const EnsembleParams& p, Branch b, cplx z1, cplx z2) {
  const int n = p.n, nu = p.nu, sg = branch_sign(b);
  if (2 * (n + nu) > 120) throw ParamError("omega_two_flavour: n + nu too large");
  const double a2 = p.a * p.a, c = a2 / (2.0 * n);
  const cplx ar[2] = {a2 * p.mu_r / n - z1, a2 * p.mu_r / n - z2};
  const cplx al[2] = {a2 * p.mu_l / n - double(sg) * z1, a2 * p.mu_l / n - double(sg) * z2};
  const int max_r = 2 * n, max_l = 2 * (n + nu);

  SparsePoly q;
  add_mono(q, {0, 0}, -c);
  add_mono(q, {1, 2}, -2.0 * c);
  add_mono(q, {3, 3}, -c);
  add_mono(q, {4, 4}, -c);
  add_mono(q, {5, 6}, -2.0 * c);
  add_mono(q, {7, 7}, -c);
  add_mono(q, {0, 4}, 1.0 / n);
  add_mono(q, {1, 6}, 1.0 / n);
  add_mono(q, {2, 5}, 1.0 / n);
  add_mono(q, {3, 7}, 1.0 / n);
  add_mono(q, {0}, -ar[0]);
  add_mono(q, {3}, -ar[1]);
  add_mono(q, {4}, -al[0]);
  add_mono(q, {7}, -al[1]);

  SparsePoly g{{0, 1.0}}, term{{0, 1.0}};
  for (int k = 1; k <= max_r + max_l; ++k) {
    term = multiply(term, q, max_r, max_l);
    for (auto& [key, v] : term) {
      v /= double(k);
      g[key] += v;
    }
  }
  cplx tot = 0.0;
  for (const auto& [kr, cr] : det_power(n, 0))
    for (const auto& [kl, cl] : det_power(n + nu, 4)) {
      auto it = g.find(kr + kl);
      if (it != g.end()) tot += cr * cl * it->second;
    }
  return tot;
}

cplx sigma_from_omega(const EnsembleParams& p, Branch b, cplx z1, cplx z2) {
  return -(z1 - z2) * omega_two_flavour(p, b, z1, z2) / o_closed(p, b, p.n);
}

cplx u2_haar_integral(const U2Integrand& f, int n_angle, int n_theta) {
  // U = e^{i alpha} [[e^{i psi} cos t, sin t], [-sin t, e^{-i psi} cos t]],
  // Haar density 2 sin t cos t on t in [0, pi/2], uniform in alpha and psi.
  const double pi = std::numbers::pi;
  const Quadrature th = legendre_on(n_theta, 0.0, pi / 2);
  cplx sum = 0.0;
  for (int i = 0; i < n_angle; ++i) {
    const cplx e = std::polar(1.0, 2.0 * pi * (i + 0.5) / n_angle);
    for (int j = 0; j < n_angle; ++j) {
      const cplx ep = std::polar(1.0, 2.0 * pi * (j + 0.5) / n_angle);
      for (std::size_t k = 0; k < th.size(); ++k) {
        const double t = th.nodes[k], ct = std::cos(t), st = std::sin(t);
        const std::array<cplx, 4> u{e * ep * ct, e * st, -e * st, e / ep * ct};
        sum += th.weights[k] * 2.0 * st * ct * f(u, e * e);
      }
    }
  }
  return sum / double(n_angle * n_angle);
}

}  // namespace wrmt
