// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
// Prints one PASS/FAIL line per acceptance criterion, followed by the
// individual checks. Exit status is nonzero if any criterion fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "wrmt/verify.hpp"

int main(int argc, char** argv) {
  wrmt::VerifyOptions o;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--quick") o.quick = true;
  int failed = 0;
  for (const wrmt::CriterionReport& r : wrmt::run_verification(o)) {
    const bool ok = r.passed();
    failed += !ok;
    std::printf("[%s] criterion %d: %s (%.1f s", ok ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
    if (r.time_limit > 0.0) std::printf(", limit %.0f s", r.time_limit);
    std::printf(")\n");
    for (const wrmt::CheckResult& c : r.checks)
      std::printf("    %-4s %-44s %.3e %s %.1e%s  %s\n", c.passed ? "ok" : "bad", c.name.c_str(), c.value,
                  c.at_least ? ">=" : "<=", c.tol, c.gating ? "" : " (info)", c.detail.c_str());
  }
  std::printf("%d of 10 criteria failed\n", failed);
  std::fflush(stdout);
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
