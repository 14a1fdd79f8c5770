// Part of erestab. MIT license; see LICENSE at the repository root.
//
// End-to-end acceptance suite: eleven numbered checks exercising the whole
// pipeline (monodromy integration, spectral classification, Galerkin index
// machinery, degenerate-surface tracing, and the equal-mass case study)
// against closed forms, cross-module identities, and tabulated values.
// Each check returns one pass/fail record with a measurement summary; a
// thrown exception fails the check and lands in its detail string.

#pragma once

#include <string>
#include <vector>

namespace erestab {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;    // key measurements, or the failure reason
  double seconds = 0.0;
};

struct SelfTestReport {
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
  double seconds = 0.0;
};

// Run all checks in order.  workers sizes the thread pool of the grid
// checks (0 = the nominal eight-way pool); ERE_STAB_THREADS caps it.
SelfTestReport run_selftest(int workers = 0);

// One line per criterion: "[PASS] <n> <name>: <detail> (<t> s)".
std::string format_report(const SelfTestReport& report);

}  // namespace erestab
