// Part of erestab. MIT license; see LICENSE at the repository root.
//
// Acceptance gate: runs the full self-test battery and prints one pass/fail
// line per criterion.  Exit status 0 only when every criterion passes.

#include <cstdio>

#include "erestab/selftest.hpp"

int main() {
  const erestab::SelfTestReport report = erestab::run_selftest(0);
  std::fputs(erestab::format_report(report).c_str(), stdout);
  return report.all_pass ? 0 : 1;
}
