// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wrmt/skewpoly.hpp"

using namespace wrmt;
using doctest::Approx;

namespace {

void check_coeffs(const Poly& p, const std::vector<double>& ref) {
  REQUIRE(p.degree() + 1 == static_cast<int>(ref.size()));
  for (std::size_t j = 0; j < ref.size(); ++j) CHECK(p[j] == Approx(ref[j]).epsilon(1e-12).scale(1.0));
}

const EnsembleParams kP{2, 1, 0.5, 0.3, -0.2};

}  // namespace

// Frozen values at (n, nu, a, mu_r, mu_l) = (2, 1, 0.5, 0.3, -0.2). They were
// produced by the closed form and agree with the Pfaffian moment route and the
// phase integral to better than 1e-12.
TEST_CASE("frozen closed-form values, minus branch") {
  const Branch b = Branch::Minus;
  CHECK(o_closed(kP, b, 0) == Approx(0.41017531904311333).epsilon(1e-12));
  CHECK(o_closed(kP, b, 1) == Approx(0.1153618084808756).epsilon(1e-12));
  CHECK(o_closed(kP, b, 2) == Approx(0.097336525905738797).epsilon(1e-12));
  CHECK(h_closed(kP, b, 0) == Approx(0.88844526453485773).epsilon(1e-12));
  const Poly qe0 = q_even_closed(kP, b, 0), qe1 = q_even_closed(kP, b, 1);
  check_coeffs(qe0, {-0.025, 1.0});
  check_coeffs(q_odd_from_even(kP, b, 0, qe0), {-0.124375, -0.05, 1.0});
  check_coeffs(qe1, {0.0296640625, -1.1225, -0.0875, 1.0});
  check_coeffs(q_odd_from_even(kP, b, 1, qe1), {0.13994169921875, 0.0655703125, -1.49640625, -0.1, 1.0});
  check_coeffs(p_poly(kP, b, 2), {-0.124375, -0.05, 1.0});
}

TEST_CASE("frozen closed-form values, plus branch") {
  const Branch b = Branch::Plus;
  CHECK(o_closed(kP, b, 0) == Approx(-0.87742350525203294).epsilon(1e-12));
  CHECK(o_closed(kP, b, 1) == Approx(-0.68548711347815061).epsilon(1e-12));
  CHECK(o_closed(kP, b, 2) == Approx(-1.6066104222144164).epsilon(1e-12));
  const Poly qe1 = q_even_closed(kP, b, 1);
  check_coeffs(q_even_closed(kP, b, 0), {0.025, 1.0});
  check_coeffs(qe1, {0.0296640625, 0.87375, 0.0125, 1.0});
  check_coeffs(q_odd_from_even(kP, b, 1, qe1), {-0.10662314453125, 0.1029921875, 0.49984375, 0.1, 1.0});
}

TEST_CASE("orthogonal polynomials are monic and match the moment route") {
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const WeightContext ctx(kP, b);
    const auto ps = build_ortho(kP, b, 6);
    for (const OrthoPoly& op : ps) {
      CHECK(op.poly.leading() == Approx(1.0));
      CHECK(op.h == Approx(h_closed(kP, b, op.l)));
      CHECK(coeff_rel_diff(op.poly, ortho_moment_route(ctx, op.l)) <= 1e-9);
    }
  }
}

TEST_CASE("skew-orthogonality with closed-form o") {
  for (Branch b : {Branch::Minus, Branch::Plus})
    for (const EnsembleParams& p : {kP, EnsembleParams{3, 2, 0.8, 0.7, -0.4}, EnsembleParams{2, 0, 0.3, 0.0, 0.0}}) {
      const WeightContext ctx(p, b);
      const SkewSystem s = build_skew_closed(p, b);
      for (int k = 0; k < 2 * (p.n + 1); ++k)
        for (int l = 0; l < 2 * (p.n + 1); ++l) {
          double ref = 0.0;
          if (k / 2 == l / 2 && k != l) ref = k < l ? s.o[k / 2] : -s.o[k / 2];
          const double v = ctx.antisym_product(s.q(k), s.q(l));
          CHECK(std::abs(v - ref) <= 1e-9 * std::sqrt(std::abs(s.o[k / 2] * s.o[l / 2])));
        }
      for (int j = 0; j < p.nu; ++j)
        for (int k = 0; k < 2 * (p.n + 1); ++k)
          CHECK(std::abs(ctx.scalar_product(s.ortho[j].poly, s.q(k))) <= 1e-10 * std::sqrt(s.ortho[j].h * ctx.scalar_product(s.q(k), s.q(k))));
    }
}

TEST_CASE("three routes agree") {
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const WeightContext ctx(kP, b);
    const PfaffianRoute pr = build_skew_pfaffian(ctx, 3);
    for (int l = 0; l <= 3; ++l) {
      const Poly qe = q_even_closed(kP, b, l);
      CHECK(coeff_rel_diff(pr.q_even[l], qe) <= 1e-10);
      CHECK(odd_diff_mod_even(pr.q_odd[l], q_odd_from_even(kP, b, l, qe), qe) <= 1e-10);
      CHECK(pr.o[l] == Approx(o_closed(kP, b, l)).epsilon(1e-10));
      const cplx z(0.37, 0.2);
      const PhaseIntegralResult ph = phase_integral_q(kP, b, l, z);
      CHECK(ph.converged);
      CHECK(std::abs(ph.value - qe(z)) <= 1e-10 * std::abs(qe(z)));
      CHECK(rodrigues_check(kP, b, l) <= 1e-10);
    }
  }
}

TEST_CASE("o is invalid where the minus branch does not exist") {
  CHECK(std::isnan(o_closed({2, 1, 1.2}, Branch::Minus, 0)));
  CHECK(std::isfinite(o_closed({2, 1, 1.2}, Branch::Plus, 0)));
}

TEST_CASE("odd recursion with epsilon_l and the q-p shift identity") {
  for (Branch b : {Branch::Minus, Branch::Plus})
    for (const EnsembleParams& p : {kP, EnsembleParams{3, 2, 0.5, 0.3, -0.2}}) {
      const WeightContext ctx(p, b);
      const SkewSystem s = build_skew_closed(p, b);
      for (int l = 0; l <= 2; ++l) {
        CHECK(verify_odd_recursion(ctx, s, l) <= 1e-10);
        CHECK(qp_shift_identity_residual(ctx, s, l) <= 1e-10);
      }
    }
}

TEST_CASE("small-a limit is Laguerre") {
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const EnsembleParams p{2, 1, 1e-4, 0.3, 0.2};
    const SkewSystem s = build_skew_closed(p, b, 2);
    for (int l = 0; l <= 2; ++l) {
      CHECK(coeff_rel_diff(s.q_even[l], laguerre_limit_even(p, b, l)) <= 1e-6);
      CHECK(coeff_rel_diff(s.q_odd[l], laguerre_limit_odd(p, b, l)) <= 1e-6);
    }
  }
  // l = 1, nu = 0, minus: 1! (-1/n) L_1^0(n z^2) = z^2 - 1/n.
  const Poly lim = laguerre_limit_even({2, 0, 1e-4}, Branch::Minus, 1);
  check_coeffs(lim, {-0.5, 0.0, 1.0});
}

TEST_CASE("GUE point is Hermite") {
  const EnsembleParams g{3, 1, 1.0, 0.4, -0.4};
  const SkewSystem s = build_skew_closed(g, Branch::Minus, 3);
  for (int k = 0; k < 8; ++k) CHECK(coeff_rel_diff(s.q(k), gue_limit(g, g.nu + k)) <= 1e-12);
}

TEST_CASE("large-a limit factorizes") {
  const EnsembleParams p{2, 1, 100.0, 0.3, 0.2};
  for (int l = 0; l <= 2; ++l) {
    const Poly q = q_even_closed(p, Branch::Plus, l), lim = large_a_limit(p, Branch::Plus, l);
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= 24; ++i) {
      const double z = (-3.0 + 0.25 * i) * p.a / std::sqrt(2.0);
      num = std::max(num, std::abs(q(z) - lim(z)));
      den = std::max(den, std::abs(lim(z)));
    }
    CHECK(num / den <= 1e-3);
  }
}

TEST_CASE("normalization identities") {
  for (Branch b : {Branch::Minus, Branch::Plus})
    for (const EnsembleParams& p : {EnsembleParams{3, 2, 0.6, 0.4, -0.3}, EnsembleParams{2, 3, 0.3, 0.0, 0.0}}) {
      const WeightContext ctx(p, b);
      const PfaffianRoute pr = build_skew_pfaffian(ctx, p.n - 1);
      std::vector<double> h;
      for (int j = 0; j < p.nu; ++j) h.push_back(ctx.scalar_product(p_poly(p, b, j), p_poly(p, b, j)));
      CHECK(normalization_identity(p, b, h, pr.o).residual() <= 1e-9);
    }
  // The form with exponent -m6^2/4 and sign (-1)^n only holds at mu = 0
  // with even nu.
  const EnsembleParams p{2, 1, 0.6, 0.4, -0.3};
  const WeightContext ctx(p, Branch::Minus);
  const PfaffianRoute pr = build_skew_pfaffian(ctx, 1);
  const std::vector<double> h{ctx.scalar_product(Poly{1.0}, Poly{1.0})};
  CHECK(normalization_identity(p, Branch::Minus, h, pr.o, true).residual() > 1e-6);
}
