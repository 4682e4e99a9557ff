#include "lbc/cli/emit.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace lbc::cli {

namespace {

using json = nlohmann::ordered_json;

const char* zero_kind(const ZeroVerdict& v) {
  switch (v.kind) {
    case ZeroVerdict::Kind::Zero: return "zero";
    case ZeroVerdict::Kind::NonZero: return "nonzero";
    case ZeroVerdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

json axiom_json(const AxiomResult& a) {
  json j;
  j["name"] = a.name;
  j["anchor"] = a.anchor;
  j["verdict"] = to_string(a.outcome());
  j["zero_test"] = zero_kind(a.verdict);
  if (!a.residual.empty()) j["residual"] = a.residual;
  if (a.residual_count > 0) j["residual_count"] = a.residual_count;
  if (!a.verdict.witness.empty()) {
    json w = json::object();
    for (const auto& [k, v] : a.verdict.witness) w[k] = v;
    j["witness"] = {{"point", w}, {"value", a.verdict.value}};
  }
  return j;
}

std::string ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", v);
  return buf;
}

}  // namespace

std::string emit_json(const std::vector<RunReport>& runs, const EmitOptions& opts) {
  json root;
  root["schema"] = 1;
  root["seed"] = runs.empty() ? 42 : runs.front().seed;
  json scen = json::array();
  for (const auto& run : runs) {
    json s;
    s["id"] = run.scenario_id;
    s["all_matched"] = run.all_matched();
    json checks = json::array();
    for (const auto& c : run.checks) {
      json jc;
      jc["name"] = c.name;
      jc["kind"] = c.kind;
      jc["verdict"] = to_string(c.verdict);
      jc["expect"] = to_string(c.expect);
      jc["matched"] = c.matched;
      if (!c.error.empty()) jc["error"] = c.error;
      json ax = json::array();
      for (const auto& a : c.report.axioms) ax.push_back(axiom_json(a));
      jc["axioms"] = ax;
      if (!c.report.notes.empty()) jc["notes"] = c.report.notes;
      if (opts.timings) jc["elapsed_ms"] = c.elapsed_ms;
      checks.push_back(jc);
    }
    s["checks"] = checks;
    scen.push_back(s);
  }
  root["scenarios"] = scen;
  return root.dump(2) + "\n";
}

std::string emit_text(const std::vector<RunReport>& runs, const EmitOptions& opts) {
  std::ostringstream out;
  int total = 0, matched = 0;
  for (const auto& run : runs) {
    out << "scenario " << run.scenario_id << " (seed " << run.seed << ")\n";
    for (const auto& c : run.checks) {
      ++total;
      matched += c.matched;
      out << "  " << (c.matched ? "ok  " : "MISS") << " " << c.name << " [" << c.kind << "] " << to_string(c.verdict);
      if (c.expect != Verdict::Pass || !c.matched) out << " (expected " << to_string(c.expect) << ")";
      if (opts.timings) out << "  " << ms(c.elapsed_ms);
      out << "\n";
      if (!c.error.empty()) out << "      error: " << c.error << "\n";
      for (const auto& a : c.report.axioms) {
        out << "      " << to_string(a.outcome()) << "  " << a.name << ": " << a.anchor;
        if (!a.residual.empty()) out << "  residual " << a.residual;
        out << "\n";
      }
      for (const auto& n : c.report.notes) out << "      note: " << n << "\n";
    }
  }
  out << total << " checks, " << matched << " as expected\n";
  return out.str();
}

}  // namespace lbc::cli
