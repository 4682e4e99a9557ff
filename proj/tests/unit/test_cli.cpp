#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <sys/wait.h>

#include "lbc/cli/checks.hpp"
#include "lbc/cli/emit.hpp"
#include "lbc/cli/gallery.hpp"
#include "lbc/cli/runner.hpp"
#include "lbc/cli/scenario.hpp"

using namespace lbc;
using namespace lbc::cli;

namespace {

const char* kMinimal = R"(
id = "minimal"
[chart]
vars = ["x", "y", "z"]
[bivector.pi]
components = { xy = "1" }
[[check]]
kind = "verify_poisson"
pi = "pi"
)";

struct Proc {
  int code;
  std::string out;
};

Proc run_tool(const std::string& args) {
  std::string cmd = std::string(LBC_TOOL_PATH) + " " + args + " 2>/dev/null";
  Proc p{-1, ""};
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return p;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) p.out.append(buf.data(), n);
  int st = pclose(f);
  p.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return p;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

ScenarioError parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ScenarioError("none");
}

}  // namespace

TEST(ParseScenario, Minimal) {
  Scenario s = parse_scenario(kMinimal);
  EXPECT_EQ(s.id, "minimal");
  ASSERT_EQ(s.checks.size(), 1u);
  EXPECT_EQ(s.checks[0].name, "verify_poisson");
  EXPECT_FALSE(s.checks[0].expect.has_value());
  const Multivector& pi = s.multivectors.at("pi");
  EXPECT_TRUE((pi.get({0, 1}) - Expr(1)).is_zero());
}

TEST(ParseScenario, SlotOrderFlipsSign) {
  Scenario s = parse_scenario(R"(
[chart]
vars = ["x", "y"]
[form.w]
degree = 2
components = { yx = "3" }
)");
  EXPECT_TRUE((s.forms.at("w").get({0, 1}) + Expr(3)).is_zero());
}

TEST(ParseScenario, TomlSyntaxErrorHasLineAndColumn) {
  ScenarioError e = parse_error("id = \"a\"\n[chart\nvars = []\n");
  EXPECT_EQ(e.line(), 2);
  EXPECT_GT(e.column(), 0);
}

TEST(ParseScenario, MalformedExpression) {
  ScenarioError e = parse_error(R"([chart]
vars = ["x", "y"]
[bivector.pi]
components = { xy = "x +" }
)");
  EXPECT_EQ(e.line(), 4);
  EXPECT_NE(e.message().find("x +"), std::string::npos);
}

TEST(ParseScenario, UndeclaredSymbol) {
  ScenarioError e = parse_error(R"([chart]
vars = ["x", "y"]
[[check]]
kind = "verify_poisson"
pi = "nope"
)");
  EXPECT_NE(e.message().find("nope"), std::string::npos);
  EXPECT_EQ(e.line(), 5);
}

TEST(ParseScenario, UnknownVariableInExpression) {
  ScenarioError e = parse_error(R"([chart]
vars = ["x", "y"]
[function.f]
value = "w"
)");
  EXPECT_EQ(e.line(), 4);
}

TEST(ParseScenario, UnknownCheckKind) {
  ScenarioError e = parse_error(R"([chart]
vars = ["x"]
[[check]]
kind = "verify_everything"
)");
  EXPECT_NE(e.message().find("verify_everything"), std::string::npos);
}

TEST(ParseScenario, WrongArgumentType) {
  ScenarioError e = parse_error(R"([chart]
vars = ["x", "y"]
[form.w]
degree = 2
components = { xy = "1" }
[[check]]
kind = "verify_poisson"
pi = "w"
)");
  EXPECT_NE(e.message().find("multivector"), std::string::npos);
}

TEST(ParseScenario, MissingArgumentAndRepeatedSlot) {
  parse_error("[chart]\nvars = [\"x\"]\n[[check]]\nkind = \"verify_poisson\"\n");
  parse_error("[chart]\nvars = [\"x\", \"y\"]\n[bivector.pi]\ncomponents = { xx = \"1\" }\n");
  parse_error("[chart]\nvars = [\"x\"]\n[[check]]\nkind = \"homogenize_roundtrip\"\n");
}

TEST(ParseScenario, GroupoidCharts) {
  Scenario s = parse_scenario(R"([chart]
vars = ["x"]
[groupoid.G]
kind = "scaling"
of = "P"
[groupoid.P]
kind = "pair"
[function.f]
on = "G"
value = "x_1 - x_2 + r"
)");
  ASSERT_EQ(s.groupoids.count("G"), 1u);
  EXPECT_EQ(s.functions.at("f").variables(), (std::set<std::string>{"r", "x_1", "x_2"}));
  parse_error("[chart]\nvars = [\"x\"]\n[groupoid.G]\nkind = \"scaling\"\nof = \"G\"\n");
}

TEST(Registry, EveryKindHasSummaryAndRunner) {
  EXPECT_GE(check_kinds().size(), 20u);
  std::set<std::string> seen;
  for (const auto& k : check_kinds()) {
    EXPECT_TRUE(seen.insert(k.kind).second) << k.kind;
    EXPECT_FALSE(k.summary.empty());
    EXPECT_TRUE(static_cast<bool>(k.run));
  }
  EXPECT_EQ(find_check_kind("nonexistent"), nullptr);
}

TEST(Run, ExpectedFailOnCorruptedPoissonCountsAsMatch) {
  Scenario s = parse_scenario(R"([chart]
vars = ["x", "y", "z"]
[bivector.bad]
components = { xy = "x", yz = "y" }
[[check]]
kind = "verify_poisson"
pi = "bad"
expect = "fail"
)");
  RunReport r = run(s);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].verdict, Verdict::Fail);
  EXPECT_TRUE(r.checks[0].matched);
  EXPECT_TRUE(r.all_matched());
}

TEST(Run, ErrorsNeverMatch) {
  // odd-dimensional chart: the holomorphic check throws
  Scenario s = parse_scenario(R"([chart]
vars = ["x", "y", "z"]
[bivector.pi]
components = {}
[tensor11.n]
scale = "1"
[[check]]
kind = "verify_holomorphic_poisson"
pi = "pi"
N = "n"
expect = "unknown"
)");
  RunReport r = run(s);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_FALSE(r.checks[0].error.empty());
  EXPECT_FALSE(r.all_matched());
}

TEST(Run, OnlyGlobSelectsChecks) {
  Scenario s = gallery().front();
  RunReport all = run(s);
  RunReport none = run(s, 42, "no_such_check*");
  EXPECT_TRUE(none.checks.empty());
  EXPECT_FALSE(all.checks.empty());
  RunReport one = run(s, 42, all.checks.front().name);
  ASSERT_EQ(one.checks.size(), 1u);
}

TEST(Gallery, ContainsRequiredScenarios) {
  std::set<std::string> ids;
  for (const auto& s : gallery()) ids.insert(s.id);
  for (const char* id : {"contact_r3", "so3_lie_poisson", "c2_holomorphic", "pn_identity", "magri_morosi_suite",
                         "jacobi_nijenhuis_suite", "pair_groupoid_symplectic", "cotangent_groupoid_zero_poisson",
                         "scaling_extension_euler", "homogenization_roundtrip"})
    EXPECT_EQ(ids.count(id), 1u) << id;
  EXPECT_GE(ids.size(), 10u);
}

TEST(Gallery, ContactR3AllPass) {
  for (const auto& s : gallery()) {
    if (s.id != "contact_r3") continue;
    RunReport r = run(s);
    EXPECT_TRUE(r.all_matched());
    for (const auto& c : r.checks) EXPECT_EQ(c.verdict, Verdict::Pass) << c.name << " " << c.error;
  }
}

TEST(Gallery, EveryExpectationMetWithoutUnknowns) {
  for (const auto& s : gallery()) {
    RunReport r = run(s);
    for (const auto& c : r.checks) EXPECT_TRUE(c.matched) << s.id << "/" << c.name << " " << c.error;
    EXPECT_EQ(r.unknown_count(), 0) << s.id;
  }
}

TEST(Gallery, VerdictsIndependentOfSeed) {
  for (const auto& s : gallery()) {
    RunReport a = run(s, 1), b = run(s, 977);
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].verdict, b.checks[i].verdict);
  }
}

TEST(Emit, JsonIsDeterministicAndVersioned) {
  std::vector<RunReport> a, b;
  for (const auto& s : gallery()) a.push_back(run(s, 7));
  for (const auto& s : gallery()) b.push_back(run(s, 7));
  std::string ja = emit_json(a), jb = emit_json(b);
  EXPECT_EQ(ja, jb);
  EXPECT_NE(ja.find("\"schema\": 1"), std::string::npos);
  EXPECT_NE(ja.find("\"seed\": 7"), std::string::npos);
  EXPECT_EQ(ja.find("elapsed_ms"), std::string::npos);
  EXPECT_NE(emit_json(a, {true}).find("elapsed_ms"), std::string::npos);
}

TEST(Emit, TextNamesAnchorsAndResiduals) {
  RunReport r = run(parse_scenario(R"([chart]
vars = ["x", "y", "z"]
[bivector.bad]
components = { xy = "x", yz = "y" }
[[check]]
kind = "verify_poisson"
pi = "bad"
)"));
  std::string t = emit_text({r});
  EXPECT_NE(t.find("[pi, pi] = 0"), std::string::npos);
  EXPECT_NE(t.find("residual"), std::string::npos);
  EXPECT_NE(t.find("MISS"), std::string::npos);
}

TEST(Tool, ExitCodes) {
  EXPECT_EQ(run_tool("--scenario " + write_temp("lbc_ok.toml", kMinimal)).code, 0);
  std::string empty = write_temp("lbc_empty.toml", "[chart]\nvars = [\"x\"]\n");
  Proc e = run_tool("--scenario " + empty);
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("0 checks"), std::string::npos);

  std::string miss = write_temp("lbc_miss.toml", std::string(kMinimal) + "expect = \"fail\"\n");
  EXPECT_EQ(run_tool("--scenario " + miss).code, 1);
  EXPECT_EQ(run_tool("--scenario " + write_temp("lbc_bad.toml", "[chart\n")).code, 2);
  EXPECT_EQ(run_tool("--scenario /nonexistent/x.toml").code, 2);
  EXPECT_EQ(run_tool("--format yaml --gallery").code, 2);
}

TEST(Tool, GalleryJsonByteIdentical) {
  Proc a = run_tool("--gallery --format json --seed 42");
  Proc b = run_tool("--gallery --format json --seed 42");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("\"verdict\": \"unknown\""), std::string::npos);
}

TEST(Tool, ScenarioFileFromRepository) {
  Proc p = run_tool(std::string("--scenario ") + LBC_SOURCE_DIR + "/scenarios/gallery/contact_r3.toml --only 'jacobi*'");
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("jacobi_from_contact"), std::string::npos);
  EXPECT_EQ(p.out.find("symplectize_contact"), std::string::npos);
}
