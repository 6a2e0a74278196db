// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace wrmt {

enum class QuadKind { GaussHermite, GaussLegendre, GaussLaguerre, TanhSinh, Composite };

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  QuadKind kind = QuadKind::GaussLegendre;

  std::size_t size() const { return nodes.size(); }
  template <class F>
  auto integrate(F&& f) const {
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

// Weight exp(-t^2) on the real line.
Quadrature gauss_hermite(int m);
// Weight 1 on [-1, 1].
Quadrature gauss_legendre(int m);
// Weight exp(-t) on [0, inf).
Quadrature gauss_laguerre(int m);
// Double-exponential rule on [-1, 1] with step h and |k| h <= t_max.
Quadrature tanh_sinh(double h = 1.0 / 16, double t_max = 3.2);

// Gauss-Hermite mapped to the weight exp(-alpha x^2 + beta x); the weight
// is folded into the returned weights, so sum w f(x) ~ int f(x) exp(...) dx.
Quadrature shifted_hermite(int m, double alpha, double beta);
// Gauss-Legendre on [lo, hi].
Quadrature legendre_on(int m, double lo, double hi);
// Composite Gauss-Legendre: `panels` equal panels of `m` nodes on [lo, hi].
Quadrature composite_legendre(int m, int panels, double lo, double hi);

// Cached tables; the returned references stay valid for the program lifetime.
const Quadrature& cached_gauss_hermite(int m);
const Quadrature& cached_gauss_legendre(int m);
const Quadrature& cached_gauss_laguerre(int m);

}  // namespace wrmt
