// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace wrmt {

// Minus: Hermitian D5 = gamma5 D_W. Plus: non-Hermitian D_W itself.
enum class Branch { Minus, Plus };

inline int branch_sign(Branch b) { return b == Branch::Plus ? 1 : -1; }
inline const char* branch_name(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }
Branch parse_branch(const std::string& s);

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EnsembleParams {
  int n = 2;
  int nu = 1;
  double a = 0.5;
  double mu_r = 0.0;
  double mu_l = 0.0;

  int dim() const { return 2 * n + nu; }
  void validate() const;
  // Throws for the minus branch when a >= 1, where a_hat_minus is imaginary.
  void validate_for(Branch b) const;
};

// Sign and log-magnitude, for constants built from large factorial products.
struct SignedLog {
  int sign = 1;
  double log_abs = 0.0;
  double value() const;
};

struct DerivedScales {
  double a_hat_plus = 0.0;
  double a_hat_minus = 0.0;
  bool minus_valid = false;
  double m6_plus = 0.0, m6_minus = 0.0;
  double l7_plus = 0.0, l7_minus = 0.0;
  SignedLog c_minus, c_plus;

  double a_hat(Branch b) const { return b == Branch::Plus ? a_hat_plus : a_hat_minus; }
  double m6(Branch b) const { return b == Branch::Plus ? m6_plus : m6_minus; }
  double l7(Branch b) const { return b == Branch::Plus ? l7_plus : l7_minus; }
};

DerivedScales derive_scales(const EnsembleParams& p);

// a_hat^2 for one branch; throws ParamError if the branch is invalid.
double a_hat_sq(const EnsembleParams& p, Branch b);

}  // namespace wrmt
