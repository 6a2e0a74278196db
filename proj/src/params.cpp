// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wrmt/special.hpp"

namespace wrmt {

Branch parse_branch(const std::string& s) {
  if (s == "plus" || s == "+" || s == "dw" || s == "DW") return Branch::Plus;
  if (s == "minus" || s == "-" || s == "d5" || s == "D5") return Branch::Minus;
  throw ParamError("unknown branch '" + s + "' (expected plus or minus)");
}

void EnsembleParams::validate() const {
  if (n < 1) throw ParamError("n must be >= 1");
  if (nu < 0) throw ParamError("nu must be >= 0");
  if (!(a > 0.0) || !std::isfinite(a)) throw ParamError("a must be a positive finite number");
  if (!std::isfinite(mu_r) || !std::isfinite(mu_l)) throw ParamError("mu_r and mu_l must be finite");
}

void EnsembleParams::validate_for(Branch b) const {
  validate();
  if (b == Branch::Minus && a >= 1.0)
    throw ParamError("minus branch requires a < 1 (a_hat_minus is imaginary otherwise)");
}

double SignedLog::value() const { return sign * std::exp(log_abs); }

double a_hat_sq(const EnsembleParams& p, Branch b) {
  p.validate_for(b);
  const double s = branch_sign(b);
  return p.n * p.a * p.a / (2.0 * (1.0 + s * p.a * p.a));
}

DerivedScales derive_scales(const EnsembleParams& p) {
  p.validate();
  DerivedScales d;
  const double n = p.n, nu = p.nu, a2 = p.a * p.a;
  const double ap2 = n * a2 / (2.0 * (1.0 + a2));
  d.a_hat_plus = std::sqrt(ap2);
  d.m6_plus = 2.0 * ap2 / n * (p.mu_r + p.mu_l);
  d.l7_plus = 2.0 * ap2 / n * (p.mu_r - p.mu_l);
  d.minus_valid = p.a < 1.0;
  if (d.minus_valid) {
    const double am2 = n * a2 / (2.0 * (1.0 - a2));
    d.a_hat_minus = std::sqrt(am2);
    d.m6_minus = 2.0 * am2 / n * (p.mu_r + p.mu_l);
    d.l7_minus = 2.0 * am2 / n * (p.mu_r - p.mu_l);
  } else {
    d.a_hat_minus = d.m6_minus = d.l7_minus = std::numeric_limits<double>::quiet_NaN();
  }

  // log(1/c) shared part: (16 pi/n)^{n/2} (2 pi)^{nu/2} n^{-nu^2/2 - n(n+nu)}
  const double pi = std::numbers::pi;
  const double base = 0.5 * n * std::log(16.0 * pi / n) + 0.5 * nu * std::log(2.0 * pi) +
                      (-0.5 * nu * nu - n * (n + nu)) * std::log(n);
  double lm = base + log_factorial(2 * p.n + p.nu);
  for (int j = 0; j < p.n; ++j) lm += log_factorial(j);
  for (int j = 0; j < p.n + p.nu; ++j) lm += log_factorial(j);
  d.c_minus = {1, -lm};
  double lp = base;
  for (int j = 0; j <= p.n; ++j) lp += log_factorial(j);
  for (int j = 0; j <= p.n + p.nu; ++j) lp += log_factorial(j);
  const int e = p.nu * (p.nu - 1) / 2 + p.n * (p.n - 1) / 2;
  d.c_plus = {(e % 2) ? -1 : 1, -lp};
  return d;
}

}  // namespace wrmt
