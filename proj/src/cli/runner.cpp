#include "lbc/cli/runner.hpp"

#include <fnmatch.h>

#include <chrono>
#include <exception>

#include "lbc/cli/checks.hpp"

namespace lbc::cli {

bool RunReport::all_matched() const {
  for (const auto& c : checks)
    if (!c.matched) return false;
  return true;
}

int RunReport::unknown_count() const {
  int n = 0;
  for (const auto& c : checks)
    for (const auto& a : c.report.axioms) n += a.outcome() == Verdict::Unknown;
  return n;
}

RunReport run(const Scenario& s, std::uint64_t seed, const std::string& only) {
  RunReport out;
  out.scenario_id = s.id;
  out.seed = seed;
  for (const auto& spec : s.checks) {
    if (!only.empty() && fnmatch(only.c_str(), spec.name.c_str(), 0) != 0) continue;
    CheckResult r;
    r.name = spec.name;
    r.kind = spec.kind;
    r.expect = spec.expect.value_or(Verdict::Pass);
    auto start = std::chrono::steady_clock::now();
    try {
      const CheckKind* kind = find_check_kind(spec.kind);
      if (!kind) throw ScenarioError("unknown check kind '" + spec.kind + "'", spec.line);
      r.report = kind->run(s, spec, seed);
      r.report.seed = seed;
      r.verdict = r.report.overall();
      r.matched = r.verdict == r.expect;
    } catch (const std::exception& e) {
      r.error = e.what();
      r.verdict = Verdict::Unknown;
      r.matched = false;
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.checks.push_back(std::move(r));
  }
  return out;
}

}  // namespace lbc::cli
