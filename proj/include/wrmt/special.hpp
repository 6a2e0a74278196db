// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace wrmt {

// Physicists' Hermite H_l(x), three-term recurrence.
double hermite(int l, double x);
// Probabilists' (monic) Hermite He_l(x).
double hermite_he(int l, double x);
// Generalized Laguerre L_l^(nu)(x).
double laguerre(int l, int nu, double x);

// erf(x2) - erf(x1), computed from erfc when both arguments sit in one tail.
double erf2(double x1, double x2);
// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

struct BesselResult {
  double value = 0.0;
  bool overflow = false;  // value is then +-inf with the correct sign
};
// Modified Bessel function I_l(x) for integer order.
BesselResult bessel_i_checked(int l, double x);
double bessel_i(int l, double x);

double log_factorial(int k);
double factorial(int k);
double binomial(int n, int k);

}  // namespace wrmt
