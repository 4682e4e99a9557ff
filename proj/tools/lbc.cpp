// lbc: runs scenario files and the built-in gallery.
//
// Exit codes: 0 when every check met its expectation, 1 otherwise, 2 on a
// parse or validation error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lbc/cli/emit.hpp"
#include "lbc/cli/gallery.hpp"
#include "lbc/cli/runner.hpp"
#include "lbc/cli/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Symbolic line-bundle calculus checks"};
  std::uint64_t seed = 42;
  std::string format = "text";
  std::vector<std::string> paths;
  bool use_gallery = false;
  bool timings = false;
  bool list = false;
  std::string only;
  app.add_option("--seed", seed, "sampling seed")->capture_default_str();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--scenario", paths, "scenario TOML file (repeatable)");
  app.add_flag("--gallery", use_gallery, "run the built-in scenarios");
  app.add_option("--only", only, "run only checks whose name matches this glob");
  app.add_flag("--timings", timings, "include elapsed times");
  app.add_flag("--list", list, "list gallery scenarios and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  using namespace lbc::cli;
  if (list) {
    for (const auto& [stem, text] : gallery_sources()) std::cout << stem << "\n";
    return 0;
  }
  if (paths.empty() && !use_gallery) {
    std::cerr << "lbc: nothing to run; pass --scenario <path> or --gallery\n";
    return 2;
  }

  std::vector<Scenario> scenarios;
  try {
    if (use_gallery)
      for (auto& s : gallery()) scenarios.push_back(std::move(s));
    for (const auto& p : paths) {
      std::ifstream in(p);
      if (!in) {
        std::cerr << "lbc: cannot open " << p << "\n";
        return 2;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      scenarios.push_back(parse_scenario(buf.str(), p));
    }
  } catch (const ScenarioError& e) {
    std::cerr << "lbc: " << e.what() << "\n";
    return 2;
  }

  std::vector<RunReport> runs;
  for (const auto& s : scenarios) runs.push_back(run(s, seed, only));
  for (const auto& r : runs)
    for (const auto& c : r.checks)
      if (!c.error.empty()) std::cerr << "lbc: " << r.scenario_id << "/" << c.name << ": " << c.error << "\n";

  EmitOptions opts;
  opts.timings = timings;
  std::cout << (format == "json" ? emit_json(runs, opts) : emit_text(runs, opts));
  for (const auto& r : runs)
    if (!r.all_matched()) return 1;
  return 0;
}
