// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wrmt/params.hpp"
#include "wrmt/skewpoly.hpp"
#include "wrmt/weights.hpp"

using namespace wrmt;
using doctest::Approx;

TEST_CASE("derived scales") {
  const EnsembleParams p{2, 1, 0.5, 0.3, -0.2};
  const DerivedScales d = derive_scales(p);
  CHECK(d.a_hat_plus * d.a_hat_plus == Approx(0.2));
  CHECK(d.a_hat_minus * d.a_hat_minus == Approx(1.0 / 3.0));
  CHECK(d.m6_plus == Approx(0.2 * 0.1));
  CHECK(d.l7_plus == Approx(0.2 * 0.5));
  CHECK(d.m6_minus == Approx(1.0 / 3.0 * 0.1));
  CHECK(d.minus_valid);
  CHECK(a_hat_sq(p, Branch::Plus) == Approx(0.2));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((EnsembleParams{0, 1, 0.5}.validate()), ParamError);
  CHECK_THROWS_AS((EnsembleParams{2, -1, 0.5}.validate()), ParamError);
  CHECK_THROWS_AS((EnsembleParams{2, 1, 0.0}.validate()), ParamError);
  CHECK_THROWS_AS((EnsembleParams{2, 1, NAN}.validate()), ParamError);
  CHECK_THROWS_AS((EnsembleParams{2, 1, 1.2}.validate_for(Branch::Minus)), ParamError);
  CHECK_NOTHROW((EnsembleParams{2, 1, 1.2}.validate_for(Branch::Plus)));
  const DerivedScales d = derive_scales({2, 1, 1.5});
  CHECK_FALSE(d.minus_valid);
  CHECK(std::isnan(d.a_hat_minus));
  CHECK(parse_branch("plus") == Branch::Plus);
  CHECK(parse_branch("d5") == Branch::Minus);
  CHECK_THROWS_AS(parse_branch("sideways"), ParamError);
}

TEST_CASE("c constants are finite logs") {
  for (int n = 1; n <= 6; ++n)
    for (int nu = 0; nu <= 4; ++nu) {
      const DerivedScales d = derive_scales({n, nu, 0.4});
      CHECK(std::isfinite(d.c_minus.log_abs));
      CHECK(std::isfinite(d.c_plus.log_abs));
      CHECK(std::abs(d.c_plus.sign) == 1);
    }
}

TEST_CASE("one-point weight integrates to h_0") {
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const EnsembleParams p{2, 1, 0.5, 0.3, -0.2};
    const WeightContext ctx(p, b);
    CHECK(ctx.scalar_product(Poly{1.0}, Poly{1.0}) == Approx(h_closed(p, b, 0)).epsilon(1e-12));
    CHECK(ctx.g1(0.2) > 0.0);
  }
}

TEST_CASE("minus two-point weight is antisymmetric") {
  const WeightContext ctx({2, 1, 0.5, 0.3, -0.2}, Branch::Minus);
  for (double x1 : {-1.0, 0.2, 0.9})
    for (double x2 : {-0.4, 0.5}) CHECK(ctx.g2_minus(x1, x2) == Approx(-ctx.g2_minus(x2, x1)).epsilon(1e-13));
}

TEST_CASE("plus two-point weight support tags") {
  const WeightContext ctx({2, 1, 0.5}, Branch::Plus);
  const G2PlusValue rr = ctx.g2_plus(SpectralPoint::real(0.1), SpectralPoint::real(0.4));
  CHECK(rr.real_real);
  CHECK_FALSE(rr.conj_pair);
  CHECK(rr.g_r == Approx(ctx.g_r(0.1, 0.4)));
  const SpectralPoint z = SpectralPoint::complex({0.2, 0.3});
  const G2PlusValue cp = ctx.g2_plus(z, SpectralPoint::complex({0.2, -0.3}));
  CHECK(cp.conj_pair);
  CHECK(std::abs(cp.g_c - ctx.g_c(z.z())) == Approx(0.0));
  const G2PlusValue none = ctx.g2_plus(z, SpectralPoint::complex({0.5, -0.3}));
  CHECK_FALSE(none.real_real);
  CHECK_FALSE(none.conj_pair);
}

TEST_CASE("antisymmetric product is antisymmetric and bilinear") {
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const WeightContext ctx({2, 1, 0.5, 0.2, 0.1}, b);
    const Poly f{0.3, 1.0}, g{-0.2, 0.0, 1.0}, h{0.5, -1.0, 0.0, 1.0};
    const double fg = ctx.antisym_product(f, g);
    CHECK(ctx.antisym_product(g, f) == Approx(-fg).epsilon(1e-12));
    CHECK(ctx.antisym_product(f, f) == Approx(0.0).epsilon(1e-12));
    CHECK(ctx.antisym_product(f + h, g) == Approx(fg + ctx.antisym_product(h, g)).epsilon(1e-12));
    const auto m = ctx.antisym_matrix({f, g, h});
    CHECK(m[0][1] == Approx(fg).epsilon(1e-12));
  }
}

TEST_CASE("modified product removes the low p_j") {
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const EnsembleParams p{2, 2, 0.5, 0.2, 0.1};
    const WeightContext ctx(p, b);
    const SkewSystem s = build_skew_closed(p, b, 2);
    const auto pl = s.p_low();
    const auto hl = s.h_low();
    // With a low p_j in a slot, the projection removes it entirely.
    CHECK(modified_product(ctx, pl, hl, pl[0], s.q_even[1]) == Approx(0.0).scale(1.0).epsilon(1e-10));
    // q polynomials are already orthogonal to the p_j, so nothing changes.
    CHECK(modified_product(ctx, pl, hl, s.q_even[1], s.q_odd[1]) ==
          Approx(ctx.antisym_product(s.q_even[1], s.q_odd[1])).epsilon(1e-10));
  }
}

TEST_CASE("real-line transforms match the product") {
  const WeightContext ctx({2, 1, 0.5}, Branch::Minus);
  const Poly f{0.3, 1.0}, g{-0.2, 0.0, 1.0};
  // int int f(x1) g(x2) g2(x1, x2) = int g(x) T(x) dx with T(x) = int f(t) g2(t, x) dt.
  const Quadrature q = composite_legendre(20, 20, -6.0, 6.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) acc += q.weights[i] * g(q.nodes[i]) * ctx.transform({f}, q.nodes[i], true)[0];
  CHECK(acc == Approx(ctx.antisym_product(f, g)).epsilon(1e-8));
}
