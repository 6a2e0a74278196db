// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wrmt/micro.hpp"
#include "wrmt/special.hpp"

using namespace wrmt;
using doctest::Approx;

TEST_CASE("series and integral agree on a grid") {
  for (Branch b : {Branch::Minus, Branch::Plus})
    for (double z : {-3.0, 0.0, 2.5})
      for (double m6 : {-1.0, 0.4})
        for (double ah : {0.25, 1.0})
          for (int nu : {0, 2}) {
            const MicroParams mp{ah, m6, 0.2, nu};
            const cplx a = micro_q_integral(mp, b, z), s = micro_q_series(mp, b, z).value;
            CHECK(std::abs(a - s) <= 1e-10 * std::abs(a));
          }
}

TEST_CASE("frozen microscopic values") {
  const MicroParams mp{1.0, 0.5, 0.2, 1};
  const cplx qp = micro_q_integral(mp, Branch::Plus, 2.0);
  CHECK(qp.real() == Approx(-1.0295794709964716).epsilon(1e-12));
  CHECK(std::abs(qp.imag()) <= 1e-13);
  CHECK(micro_q_integral(mp, Branch::Minus, 2.0).real() == Approx(2.1001578396071263).epsilon(1e-12));
  CHECK(micro_sigma(mp, Branch::Plus, 1.0, -0.5).real() == Approx(0.050707605570602284).epsilon(1e-10));
  CHECK(micro_sigma(mp, Branch::Minus, 1.0, -0.5).imag() == Approx(103.52712667249709).epsilon(1e-10));
}

TEST_CASE("a_hat = 0 keeps only the j = 0 term") {
  // Then q = T_nu(A, B) = I_nu(2 sqrt(AB)) (B/A)^{nu/2}; with A = B this is I_nu(2A).
  const MicroParams mp{0.0, 0.7, 0.1, 1};
  const MicroParams sym{0.0, 0.8, 0.0, 2};
  const cplx v = micro_q_series(sym, Branch::Minus, 0.0).value;
  CHECK(v.real() == Approx(bessel_i(2, 0.8)).epsilon(1e-13));
  CHECK(std::abs(micro_q_integral(mp, Branch::Plus, 0.3) - micro_q_series(mp, Branch::Plus, 0.3).value) <= 1e-13);
}

TEST_CASE("nu = 0, z = 0, l7 = 0 gives a Bessel product sum") {
  const double ah = 0.6, m6 = 0.9;
  double ref = 0.0;
  for (int j = -30; j <= 30; ++j) ref += bessel_i(2 * j, m6) * bessel_i(j, -2.0 * ah * ah);
  const cplx v = micro_q_series({ah, m6, 0.0, 0}, Branch::Plus, 0.0).value;
  CHECK(v.real() == Approx(ref).epsilon(1e-13));
  CHECK(std::abs(v.imag()) == 0.0);
}

TEST_CASE("phase shift by pi flips the sources with sign (-1)^nu") {
  for (Branch b : {Branch::Minus, Branch::Plus})
    for (int nu : {1, 2}) {
      const MicroParams mp{0.5, 0.3, 0.2, nu}, flipped{0.5, -0.3, -0.2, nu};
      const cplx a = micro_q_integral(mp, b, 1.3), c = micro_q_integral(flipped, b, -1.3);
      CHECK(std::abs(a - (nu % 2 ? -1.0 : 1.0) * c) <= 1e-12 * std::abs(a));
    }
}

TEST_CASE("branch ambiguity flag is diagnostic only") {
  const MicroParams mp{0.5, 0.3, 0.2, 1};
  // Minus branch at z = 2: m6 + l7 - z < 0 < m6 - l7 + z.
  const MicroSeries s = micro_q_series(mp, Branch::Minus, 2.0);
  CHECK(s.branch_ambiguous);
  CHECK(std::abs(s.value - micro_q_integral(mp, Branch::Minus, 2.0)) <= 1e-12 * std::abs(s.value));
  CHECK_FALSE(micro_q_series(mp, Branch::Plus, 2.0).branch_ambiguous);
}

TEST_CASE("micro sigma antisymmetry and diagonal") {
  const MicroParams mp{0.5, 0.3, 0.2, 1};
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    CHECK(micro_sigma(mp, b, 0.7, 0.7) == cplx(0.0));
    const cplx s = micro_sigma(mp, b, 0.7, -1.1), t = micro_sigma(mp, b, -1.1, 0.7);
    CHECK(std::abs(s + t) <= 1e-12 * std::abs(s));
    // Near-diagonal values stay finite and small, no 0/0 breakdown.
    const cplx near = micro_sigma(mp, b, 0.7, 0.7 + 1e-9);
    CHECK(std::isfinite(near.real()));
    CHECK(std::abs(near) < 1e-6 * std::abs(s));
  }
}

TEST_CASE("micro sigma is proportional to (z1 - z2) times the U(2) integral") {
  const MicroParams mp{0.5, 0.3, 0.2, 1};
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    cplx first = 0.0;
    for (auto [z1, z2] : sigma_probe_points(b)) {
      const cplx r = micro_sigma(mp, b, z1, z2) / ((z1 - z2) * micro_two_flavour(mp, b, z1, z2));
      if (first == cplx(0.0)) first = r;
      CHECK(std::abs(r / first - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("finite-n mapping") {
  const MicroParams mp{0.5, 0.3, 0.2, 1};
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const EnsembleParams p = finite_n_params(mp, b, 8);
    const DerivedScales d = derive_scales(p);
    CHECK(d.a_hat(b) == Approx(0.5).epsilon(1e-13));
    CHECK(d.m6(b) == Approx(0.3).epsilon(1e-13));
    CHECK(d.l7(b) == Approx(0.2).epsilon(1e-13));
  }
  // Plus: a^2 = 2 a_hat^2 / (n - 2 a_hat^2) needs n > 2 a_hat^2.
  CHECK_THROWS_AS(finite_n_params({2.0, 0, 0, 0}, Branch::Plus, 4), ParamError);
  CHECK_NOTHROW(finite_n_params({2.0, 0, 0, 0}, Branch::Minus, 4));
}

TEST_CASE("finite-n shapes converge to the limit") {
  const MicroParams mp{0.5, 0.3, 0.2, 1};
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    double prev_s = 1e9, prev_q = 1e9;
    for (int n : {4, 8, 16}) {
      const double es = finite_n_sigma_error(mp, b, n), eq = finite_n_q_error(mp, b, n);
      CHECK(es < prev_s);
      CHECK(eq < prev_q);
      prev_s = es;
      prev_q = eq;
    }
    CHECK(prev_s < 0.06);
    CHECK(prev_q < 0.02);
  }
}

TEST_CASE("shape error fits one complex constant") {
  const std::vector<cplx> ref{1.0, cplx(0, 2), -3.0};
  std::vector<cplx> v;
  for (const cplx& r : ref) v.push_back(cplx(2, -1) * r);
  CHECK(shape_error(v, ref) <= 1e-15);
  CHECK_THROWS(shape_error(v, {1.0}));
}

TEST_CASE("invalid micro parameters") {
  CHECK_THROWS_AS(micro_q_integral({-0.1, 0, 0, 0}, Branch::Plus, 0.0), ParamError);
  CHECK_THROWS_AS(micro_q_integral({0.1, 0, 0, -1}, Branch::Plus, 0.0), ParamError);
  CHECK_THROWS_AS(micro_sigma({0.1, 0, 0, 0}, Branch::Plus, NAN, 0.0), ParamError);
}
