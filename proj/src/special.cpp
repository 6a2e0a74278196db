// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/special.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wrmt {

double hermite(int l, double x) {
  if (l < 0) throw std::invalid_argument("hermite: negative degree");
  double h0 = 1.0;
  if (l == 0) return h0;
  double h1 = 2.0 * x;
  for (int k = 1; k < l; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double hermite_he(int l, double x) {
  if (l < 0) throw std::invalid_argument("hermite_he: negative degree");
  double h0 = 1.0;
  if (l == 0) return h0;
  double h1 = x;
  for (int k = 1; k < l; ++k) {
    const double h2 = x * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double laguerre(int l, int nu, double x) {
  if (l < 0) throw std::invalid_argument("laguerre: negative degree");
  double L0 = 1.0;
  if (l == 0) return L0;
  double L1 = 1.0 + nu - x;
  for (int k = 1; k < l; ++k) {
    const double L2 = ((2.0 * k + 1.0 + nu - x) * L1 - (k + nu) * L0) / (k + 1.0);
    L0 = L1;
    L1 = L2;
  }
  return L1;
}

double erf2(double x1, double x2) {
  if (x1 > 0.0 && x2 > 0.0) return std::erfc(x1) - std::erfc(x2);
  if (x1 < 0.0 && x2 < 0.0) return std::erfc(-x2) - std::erfc(-x1);
  return std::erf(x2) - std::erf(x1);
}

double erfcx(double x) {
  if (x < 0.0) {
    // erfcx(-x) = 2 exp(x^2) - erfcx(x)
    if (x < -26.6) return std::numeric_limits<double>::infinity();
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x < 5.0) return std::exp(x * x) * std::erfc(x);
  // Continued fraction for sqrt(pi) erfcx(x) = 1/(x+ 1/2/(x+ 1/(x+ 3/2/(x+ ...)))),
  // evaluated bottom-up with a depth that is ample for x >= 5.
  double f = x;
  for (int k = 60; k >= 1; --k) f = x + 0.5 * k / f;
  return 1.0 / (f * std::sqrt(M_PI));
}

BesselResult bessel_i_checked(int l, double x) {
  if (l < 0) l = -l;
  BesselResult r;
  if (x == 0.0) {
    r.value = l == 0 ? 1.0 : 0.0;
    return r;
  }
  const double ax = std::abs(x);
  const double sign = (x < 0.0 && (l % 2)) ? -1.0 : 1.0;
  // Quick overflow screen: I_l(x) <= I_0(x) < e^x.
  if (ax > 709.0) {
    const double log_est = ax - 0.5 * std::log(2.0 * M_PI * ax);
    if (log_est > 709.7) {
      r.value = sign * std::numeric_limits<double>::infinity();
      r.overflow = true;
      return r;
    }
  }
  try {
    r.value = sign * boost::math::cyl_bessel_i(static_cast<double>(l), ax);
  } catch (const std::overflow_error&) {
    r.value = sign * std::numeric_limits<double>::infinity();
    r.overflow = true;
  }
  if (std::isinf(r.value)) r.overflow = true;
  return r;
}

double bessel_i(int l, double x) { return bessel_i_checked(l, x).value; }

double log_factorial(int k) {
  if (k < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(k + 1.0);
}

double factorial(int k) {
  if (k < 0) throw std::invalid_argument("factorial: negative argument");
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double b = 1.0;
  for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return b;
}

}  // namespace wrmt
