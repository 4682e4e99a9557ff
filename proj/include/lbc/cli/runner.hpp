#pragma once

// Executes the checks of a scenario and compares verdicts with expectations.

#include <cstdint>
#include <string>
#include <vector>

#include "lbc/cli/scenario.hpp"

namespace lbc::cli {

struct CheckResult {
  std::string name;
  std::string kind;
  Verdict verdict = Verdict::Unknown;
  Verdict expect = Verdict::Pass;
  bool matched = false;
  Report report;
  std::string error;  // set when the check threw; never matches
  double elapsed_ms = 0.0;
};

struct RunReport {
  std::string scenario_id;
  std::uint64_t seed = 42;
  std::vector<CheckResult> checks;

  bool all_matched() const;
  int unknown_count() const;
};

/// Runs the checks whose name matches `only` (a shell glob; empty for all),
/// in declaration order.
RunReport run(const Scenario& s, std::uint64_t seed = 42, const std::string& only = "");

}  // namespace lbc::cli
