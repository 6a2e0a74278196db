// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wrmt {

// One named invariant: `value` is the worst observed residual (or count) and
// passes when it satisfies `tol` in the stated direction.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool at_least = false;  // pass when value >= tol instead of value <= tol
  bool passed = false;
  bool gating = true;     // informational checks never fail a criterion
  std::string detail;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 means none

  bool passed() const;
};

struct VerifyOptions {
  bool quick = false;
  long long mc_samples = 100000;
  std::uint64_t mc_seed = 7;
};

// Criteria 1..10 of the verification suite.
CriterionReport verify_orthogonality(const VerifyOptions& o);
CriterionReport verify_three_routes(const VerifyOptions& o);
CriterionReport verify_limits(const VerifyOptions& o);
CriterionReport verify_christoffel_darboux(const VerifyOptions& o);
CriterionReport verify_recursions(const VerifyOptions& o);
CriterionReport verify_pfaffian_core(const VerifyOptions& o);
CriterionReport verify_de_bruijn(const VerifyOptions& o);
CriterionReport verify_normalization(const VerifyOptions& o);
CriterionReport verify_monte_carlo(const VerifyOptions& o);
CriterionReport verify_microscopic(const VerifyOptions& o);

std::vector<CriterionReport> run_verification(const VerifyOptions& o);

}  // namespace wrmt
