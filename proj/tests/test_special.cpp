// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wrmt/poly.hpp"
#include "wrmt/quadrature.hpp"
#include "wrmt/special.hpp"

using namespace wrmt;
using doctest::Approx;

TEST_CASE("hermite families") {
  CHECK(hermite(0, 0.3) == 1.0);
  CHECK(hermite(2, 1.0) == Approx(2.0));
  CHECK(hermite(3, 0.5) == Approx(8 * 0.125 - 12 * 0.5));
  CHECK(hermite_he(2, 1.0) == Approx(0.0));
  CHECK(hermite_he(4, 2.0) == Approx(16.0 - 24.0 + 3.0));
  // H_l(x) = 2^{l/2} He_l(sqrt(2) x)
  for (int l = 0; l < 12; ++l)
    CHECK(hermite(l, 0.7) == Approx(std::pow(2.0, 0.5 * l) * hermite_he(l, std::sqrt(2.0) * 0.7)).epsilon(1e-12));
}

TEST_CASE("hermite coefficient tables match the recurrences") {
  for (int l = 0; l < 10; ++l) {
    CHECK(he_poly(l).leading() == 1.0);
    CHECK(he_poly(l)(0.37) == Approx(hermite_he(l, 0.37)).epsilon(1e-13));
    CHECK(h_poly(l)(-1.2) == Approx(hermite(l, -1.2)).epsilon(1e-13));
  }
}

TEST_CASE("laguerre") {
  CHECK(laguerre(0, 3, 1.7) == 1.0);
  CHECK(laguerre(1, 2, 0.5) == Approx(3.0 - 0.5));
  CHECK(laguerre(2, 0, 1.0) == Approx(-0.5));
  // L_l^nu(0) = C(l + nu, l)
  CHECK(laguerre(4, 3, 0.0) == Approx(binomial(7, 4)));
}

TEST_CASE("error functions") {
  CHECK(erf2(-1.0, 1.0) == Approx(2.0 * std::erf(1.0)));
  // Deep tail: erf(9) - erf(8) is far below double epsilon relative to 1.
  CHECK(erf2(8.0, 9.0) == Approx(std::erfc(8.0) - std::erfc(9.0)).epsilon(1e-10));
  CHECK(erf2(-9.0, -8.0) == Approx(std::erfc(8.0) - std::erfc(9.0)).epsilon(1e-10));
  CHECK(erfcx(0.0) == 1.0);
  CHECK(erfcx(30.0) == Approx(1.0 / (30.0 * std::sqrt(std::numbers::pi)) * (1 - 1.0 / 1800.0)).epsilon(1e-6));
  CHECK(erfcx(-1.0) == Approx(std::exp(1.0) * std::erfc(-1.0)));
}

TEST_CASE("modified bessel I for integer order") {
  CHECK(bessel_i(0, 1.0) == Approx(1.2660658777520082).epsilon(1e-14));
  CHECK(bessel_i(1, 1.0) == Approx(0.5651591039924851).epsilon(1e-14));
  CHECK(bessel_i(2, -2.0) == Approx(0.6889484476987382).epsilon(1e-14));
  CHECK(bessel_i(-3, 1.5) == Approx(bessel_i(3, 1.5)));
  CHECK(bessel_i(3, -1.5) == Approx(-bessel_i(3, 1.5)));
  CHECK(bessel_i(4, 0.0) == 0.0);
  const BesselResult big = bessel_i_checked(0, 800.0);
  CHECK(big.overflow);
  CHECK(std::isinf(big.value));
}

TEST_CASE("factorials") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(10) == 3628800.0);
  CHECK(log_factorial(20) == Approx(std::log(2432902008176640000.0)).epsilon(1e-14));
  CHECK(binomial(10, 3) == Approx(120.0));
  CHECK_THROWS(factorial(-1));
}

TEST_CASE("quadrature rules") {
  const double pi = std::numbers::pi;
  const Quadrature gh = gauss_hermite(20);
  CHECK(gh.integrate([](double x) { return x * x * x * x; }) == Approx(0.75 * std::sqrt(pi)).epsilon(1e-13));
  const Quadrature gl = gauss_legendre(10);
  CHECK(gl.integrate([](double x) { return std::pow(x, 18); }) == Approx(2.0 / 19.0).epsilon(1e-13));
  const Quadrature lg = gauss_laguerre(12);
  CHECK(lg.integrate([](double x) { return x * x * x; }) == Approx(6.0).epsilon(1e-12));
  const Quadrature ts = tanh_sinh();
  CHECK(ts.integrate([](double x) { return std::sqrt(1.0 - x * x); }) == Approx(pi / 2).epsilon(1e-10));
  const Quadrature sh = shifted_hermite(30, 2.0, 0.6);
  CHECK(sh.integrate([](double x) { return x; }) ==
        Approx(std::sqrt(pi / 2.0) * std::exp(0.36 / 8.0) * 0.15).epsilon(1e-12));
  const Quadrature cl = composite_legendre(8, 5, 0.0, 1.0);
  CHECK(cl.size() == 40);
  CHECK(cl.integrate([](double x) { return std::exp(x); }) == Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(&cached_gauss_hermite(30) == &cached_gauss_hermite(30));
}

TEST_CASE("polynomial arithmetic") {
  const Poly a{1.0, 2.0}, b{-1.0, 0.0, 3.0};
  const Poly c = a * b;
  CHECK(c.degree() == 3);
  CHECK(c[3] == 6.0);
  CHECK(c(0.5) == Approx(a(0.5) * b(0.5)));
  CHECK(b.derivative()[1] == 6.0);
  // P(2z + 1) for P = 1 + 2z gives 3 + 4z.
  const Poly d = a.compose_affine(2.0, 1.0);
  CHECK(d[0] == Approx(3.0));
  CHECK(d[1] == Approx(4.0));
  CHECK(coeff_rel_diff(a, a) == 0.0);
  CHECK(a.mul_x()[2] == 2.0);
}
