// Acceptance criteria: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "lbc/algebroid.hpp"
#include "lbc/cli/emit.hpp"
#include "lbc/cli/gallery.hpp"
#include "lbc/cli/runner.hpp"
#include "lbc/groupoid.hpp"
#include "lbc/homogen.hpp"
#include "lbc/random.hpp"
#include "lbc/structures.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace lbc;
using namespace lbc::test;

namespace {

// Collects reasons a criterion failed.
struct Crit {
  std::ostringstream why;
  int failures = 0;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ < 3) why << (failures > 1 ? "; " : "") << what;
  }
};

bool zero(const std::vector<Expr>& rs) {
  for (const auto& e : rs)
    if (!e.is_zero()) return false;
  return true;
}

const PolyShape kShape{2, 2, 3, 0.25};

AtiyahForm random_atiyah_form(RandomPoly& rp, const Chart& ch, int k) {
  AtiyahForm w(ch, k);
  for (const auto& idx : increasing_tuples(ch.dim() + 1, k)) w.frame().set(idx, rp.poly(ch.vars(), kShape));
  return w;
}

Multiderivation random_multiderivation(RandomPoly& rp, const Chart& ch, int m) {
  Multiderivation d(ch, m);
  for (const auto& idx : increasing_tuples(ch.dim() + 1, m)) d.frame().set(idx, rp.poly(ch.vars(), kShape));
  return d;
}

AtiyahTensor11 random_atiyah_t11(RandomPoly& rp, const Chart& ch) {
  AtiyahTensor11 t(ch);
  for (auto& row : t.m)
    for (auto& e : row) e = rp.poly(ch.vars(), kShape);
  return t;
}

std::vector<Expr> vv_residuals(const VectorValued2Form& a, const VectorValued2Form& b) {
  std::vector<Expr> out;
  for (int i = 0; i < a.chart.dim(); ++i)
    for (int j = i + 1; j < a.chart.dim(); ++j) {
      VectorField d = a.value(i, j) - b.value(i, j);
      out.insert(out.end(), d.c.begin(), d.c.end());
    }
  return out;
}

std::string ac1(Crit& c) {
  int objects = 0;
  RandomPoly rp(2024);
  for (const auto& vars : std::vector<std::vector<std::string>>{{"x"}, {"x", "y"}, {"x", "y", "z"}}) {
    Chart base = chart(vars);
    HomogChart hc(base);
    for (int k = 0; k <= std::min(2, base.dim()); ++k) {
      AtiyahForm w = random_atiyah_form(rp, base, k);
      ++objects;
      c.expect(zero(residuals(homogenize(hc, d_D(w)) - oracle::ext_d_alternating_sum(homogenize(hc, w)))),
               "d_D naturality, dim " + std::to_string(base.dim()) + ", degree " + std::to_string(k));
    }
    for (int m1 = 1; m1 <= 2; ++m1)
      for (int m2 = 1; m2 <= 2; ++m2) {
        if (m1 + m2 - 1 > base.dim() + 1) continue;
        Multiderivation a = random_multiderivation(rp, base, m1), b = random_multiderivation(rp, base, m2);
        objects += 2;
        Multivector lhs = homogenize(hc, sj_bracket(a, b));
        c.expect(zero(residuals(lhs - oracle::schouten_odd(homogenize(hc, a), homogenize(hc, b)))),
                 "bracket naturality, dim " + std::to_string(base.dim()));
      }
    if (base.dim() <= 2) {
      AtiyahTensor11 a = random_atiyah_t11(rp, base), b = random_atiyah_t11(rp, base);
      objects += 2;
      c.expect(zero(vv_residuals(homogenize(hc, fnd_bracket(a, b)), fn_bracket(homogenize(hc, a), homogenize(hc, b)))),
               "Froelicher-Nijenhuis naturality");
      c.expect(zero(vv_residuals(homogenize(hc, atiyah_torsion(a)), oracle::torsion_components(homogenize(hc, a)))),
               "torsion naturality");
    }
  }
  c.expect(objects >= 20, "fewer than 20 objects");
  return std::to_string(objects) + " random objects, homogenize o d_D = d o homogenize and bracket analogues";
}

// {l, m} = P(dl, dm) + l Q(dm) - m Q(dl) from the components of (P, Q).
Expr jacobi_bracket(const Multiderivation& j, const Expr& l, const Expr& m) {
  const Chart& ch = j.chart();
  Multivector p = j.P(), q = j.Q();
  Expr out;
  for (int a = 0; a < ch.dim(); ++a) {
    Expr dla = differentiate(l, ch.var(a)), dma = differentiate(m, ch.var(a));
    out += l * q.get({a}) * dma - m * q.get({a}) * dla;
    for (int b = 0; b < ch.dim(); ++b)
      if (a != b) {
        Expr pab = a < b ? p.get({a, b}) : -p.get({b, a});
        out += pab * dla * differentiate(m, ch.var(b));
      }
  }
  return out;
}

Expr poisson_bracket(const Multivector& pi, const Expr& f, const Expr& g) {
  const Chart& ch = pi.chart;
  Expr out;
  for (int a = 0; a < ch.dim(); ++a)
    for (int b = a + 1; b < ch.dim(); ++b)
      out += pi.get({a, b}) * (differentiate(f, ch.var(a)) * differentiate(g, ch.var(b)) -
                               differentiate(f, ch.var(b)) * differentiate(g, ch.var(a)));
  return out;
}

std::string ac2(Crit& c) {
  Chart m = chart({"x", "y", "z"});
  HomogChart hc(m);
  std::vector<std::pair<std::string, Multiderivation>> js = {
      {"contact", Multiderivation::from_parts(mv(m, 2, {{{0, 1}, "1"}, {{1, 2}, "-y"}}), mv(m, 1, {{{2}, "1"}}))},
      {"so(3)*", Multiderivation::from_parts(mv(m, 2, {{{0, 1}, "z"}, {{1, 2}, "x"}, {{0, 2}, "-y"}}), Multivector(m, 1))},
      {"reeb-only", Multiderivation::from_parts(Multivector(m, 2), mv(m, 1, {{{0}, "1"}}))},
  };
  int pairs = 0;
  for (const auto& [name, j] : js) {
    c.expect(verify_jacobi(j).passed(), name + ": verify_jacobi");
    Poissonization p = poissonize(hc, j);
    c.expect(verify_homogeneous_poisson(p.pi, hc.euler()).passed(), name + ": homogeneous Poisson");
    std::vector<Expr> secs{Expr(1)};
    for (const auto& v : m.vars()) secs.push_back(Expr::var(v));
    for (const auto& l : secs)
      for (const auto& mu : secs) {
        ++pairs;
        Expr res = poisson_bracket(p.pi, hc.r() * l, hc.r() * mu) - hc.r() * jacobi_bracket(j, l, mu);
        c.expect(res.is_zero(), name + ": bracket residual " + to_string(res));
      }
  }
  return "3 Jacobi structures, {r l, r m}_pi~ = r {l, m}_J on " + std::to_string(pairs) + " section pairs";
}

std::string ac3(Crit& c) {
  Chart base = chart({"x1", "x2", "x3"});
  ChartGroupoid g = vb_addition_groupoid(base, 3);
  Form w(g.G, 2);
  for (int a = 0; a < 3; ++a) w.set({a, 3 + a}, Expr(-1));  // dp_a ^ dx_a
  c.expect(is_multiplicative_form(g, w).passed(), "canonical form multiplicative");
  SpencerData s = spencer_of_form(g, w);
  c.expect(s.ell.size() == 3, "three frame values");
  for (int a = 0; a < 3 && a < static_cast<int>(s.ell.size()); ++a)
    c.expect(zero(residuals(s.ell[static_cast<std::size_t>(a)] - Form::coordinate(base, a))),
             "l(dx_" + std::to_string(a + 1) + ") = " + to_string(s.ell[static_cast<std::size_t>(a)]));
  c.expect(verify_spencer(*g.algebroid, s).passed(), "verify_spencer");
  return "l(dx_i) = dx_i on T*R^3 with sum dp ^ dx";
}

Form mult_defect(const ChartGroupoid& g, const Form& w) {
  return pullback(g.comp.mul, w) - pullback(g.comp.p1, w) - pullback(g.comp.p2, w);
}

std::string ac4(Crit& c) {
  ChartGroupoid pg = pair_groupoid(chart({"x", "y"}));
  Form diff = form(pg.G, 2, {{{0, 1}, "1"}, {{2, 3}, "-1"}});
  Form sum = form(pg.G, 2, {{{0, 1}, "1"}, {{2, 3}, "1"}});
  Form primitive = form(pg.G, 1, {{{1}, "x_1"}, {{3}, "-x_2"}});
  ChartGroupoid vb = vb_addition_groupoid(chart({"x1", "x2"}), 2);
  Form canonical = form(vb.G, 2, {{{2, 0}, "1"}, {{3, 1}, "1"}});
  Form taut = form(vb.G, 1, {{{0}, "p1"}, {{1}, "p2"}});

  for (const auto& [g, w, label] : std::vector<std::tuple<ChartGroupoid, Form, std::string>>{
           {pg, diff, "difference form"}, {vb, canonical, "canonical form"}, {pg, primitive, "x dy primitive"},
           {vb, taut, "tautological form"}}) {
    c.expect(zero(residuals(mult_defect(g, w))), label + ": defect");
    c.expect(is_multiplicative_form(g, w).passed(), label + ": check");
    c.expect(is_multiplicative_form(g, ext_d(w)).passed(), label + ": d stays multiplicative");
  }
  c.expect(ext_d(primitive) == diff, "d of primitive is the difference form");
  Form defect = mult_defect(pg, sum);
  c.expect(!defect.is_zero(), "sum form defect vanishes");
  c.expect(is_multiplicative_form(pg, sum).overall() == Verdict::Fail, "sum form not rejected");
  return "t*w - s*w and sum dp ^ dx multiplicative, sum form defect " + to_string(defect);
}

Tensor11 standard_j(const Chart& c) {
  return t11(c, {{"0", "-1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "0", "-1"}, {"0", "0", "1", "0"}});
}

std::string ac5(Crit& c) {
  Chart c2 = chart({"x", "y"});
  Chart c4 = chart({"x1", "y1", "x2", "y2"});
  Form w2 = form(c2, 2, {{{0, 1}, "1"}});
  Form w4 = form(c4, 2, {{{0, 1}, "1"}, {{2, 3}, "1"}});
  std::vector<std::pair<Form, Tensor11>> cases = {
      {w2, Tensor11::identity(c2)},
      {w2, t11(c2, {{"x", "0"}, {"0", "x"}})},
      {w2, t11(c2, {{"1", "x"}, {"0", "1"}})},
      {form(c2, 2, {{{0, 1}, "x"}}), Tensor11::identity(c2)},
      {w4, t11(c4, {{"x1", "0", "0", "0"}, {"0", "x1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}})},
      {w4, t11(c4, {{"x2", "0", "0", "0"}, {"0", "x2", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}})},
      {w4, standard_j(c4)},
      {form(c4, 2, {{{0, 2}, "1"}, {{1, 3}, "-1"}}), standard_j(c4)},
  };
  int pass = 0, fail = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Report r = magri_morosi(cases[i].first, cases[i].second);
    Verdict b1 = magri_morosi_branch(r, 1), b2 = magri_morosi_branch(r, 2);
    c.expect(b1 != Verdict::Unknown && b1 == b2, "pair " + std::to_string(i) + " branches differ");
    (b1 == Verdict::Pass ? pass : fail)++;
  }
  c.expect(fail >= 1 && pass >= 1, "gallery lacks a passing or failing pair");
  return std::to_string(cases.size()) + " pairs, " + std::to_string(pass) + " pass and " + std::to_string(fail) +
         " fail on both branches";
}

std::string ac6(Crit& c) {
  Chart c2 = chart({"x", "y"});
  Chart c3 = chart({"x", "y", "z"});
  Chart c4 = chart({"x1", "y1", "x2", "y2"});
  std::vector<std::pair<Multivector, Tensor11>> cases = {
      {mv(c3, 2, {{{0, 1}, "x"}, {{1, 2}, "1"}}), Tensor11::identity(c3)},
      {mv(c4, 2, {{{0, 2}, "1/4"}, {{1, 3}, "-1/4"}}), standard_j(c4)},
      {mv(c2, 2, {{{0, 1}, "1"}}), t11(c2, {{"0", "x"}, {"0", "0"}})},
      {mv(c2, 2, {{{0, 1}, "1"}}), t11(c2, {{"x", "0"}, {"0", "x"}})},
      {mv(c3, 2, {{{0, 1}, "z^2"}}), t11(c3, {{"0", "x", "0"}, {"0", "0", "0"}, {"0", "0", "0"}})},
      {mv(c4, 2, {{{0, 1}, "1"}}), standard_j(c4)},
  };
  int pass = 0, fail = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [pi, n] = cases[i];
    Report pn = verify_pn(pi, n);
    bool items = pn.verdict_of("skewness") == Verdict::Pass && pn.verdict_of("compatibility") == Verdict::Pass;
    bool spencer = verify_spencer(cotangent_algebroid(pi), spencer_from_nijenhuis(n)).passed();
    c.expect(items == spencer, "pair " + std::to_string(i) + " disagrees");
    (spencer ? pass : fail)++;
  }
  c.expect(pass >= 1 && fail >= 1, "gallery lacks a passing or failing pair");
  return std::to_string(cases.size()) + " pairs, skewness + compatibility <=> Spencer on T*M_pi (" +
         std::to_string(pass) + " pass, " + std::to_string(fail) + " fail)";
}

std::string ac7(Crit& c) {
  Chart c4 = chart({"x1", "y1", "x2", "y2"});
  Multivector pi = mv(c4, 2, {{{0, 2}, "1/4"}, {{1, 3}, "-1/4"}});
  Tensor11 j = standard_j(c4);
  Report r = verify_holomorphic_poisson(pi, j);
  for (const auto& a : r.axioms) c.expect(a.verdict.zero(), a.name + " residual " + a.residual);
  Multivector pn = pi_n(pi, j);
  c.expect(zero(residuals(oracle::schouten_odd(pn, pn))), "[pi_N, pi_N] != 0");
  c.expect(!pn.is_zero(), "pi_N vanishes");
  return "C^2 model passes all " + std::to_string(r.axioms.size()) + " axioms exactly, [pi_N, pi_N] = 0";
}

std::string ac8(Crit& c) {
  Chart c2 = chart({"x", "y"});
  Chart c3 = chart({"x", "y", "z"});
  Multivector so3 = mv(c3, 2, {{{0, 1}, "z"}, {{1, 2}, "x"}, {{0, 2}, "-y"}});
  VectorField euler3 = vf(c3, {"x", "y", "z"});
  struct Case {
    Multivector pi;
    VectorField zeta;
    int expected;  // 1 pass, 0 fail, -1 unspecified
  };
  std::vector<Case> cases = {
      {so3, euler3, 1},
      {mv(c3, 2, {{{0, 1}, "1"}}), euler3, 0},
      {so3, vf(c3, {"0", "0", "1"}), -1},
      {mv(c2, 2, {{{0, 1}, "1"}}), vf(c2, {"1/2*x", "1/2*y"}), -1},
      {mv(c2, 2, {{{0, 1}, "x"}}), vf(c2, {"0", "y"}), -1},
      {mv(c2, 2, {{{0, 1}, "x*y"}}), vf(c2, {"x", "0"}), -1},
  };
  int pass = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& k = cases[i];
    bool derivation =
        verify_algebroid_derivation(cotangent_algebroid(k.pi), homogeneity_derivation(k.pi, k.zeta)).passed();
    bool homogeneous = zero(residuals(lie_derivative(k.zeta, k.pi) + k.pi));
    c.expect(derivation == homogeneous, "pair " + std::to_string(i) + " disagrees");
    if (k.expected >= 0) c.expect(homogeneous == (k.expected == 1), "pair " + std::to_string(i) + " wrong verdict");
    pass += homogeneous;
  }
  return std::to_string(cases.size()) + " pairs, L_zeta - 1 derivation <=> L_zeta pi + pi = 0 (" +
         std::to_string(pass) + " homogeneous)";
}

std::string ac9(Crit& c) {
  Chart m = chart({"x", "y", "z"});
  Form theta = form(m, 1, {{{2}, "1"}, {{0}, "-y"}});
  AtiyahForm omega = d_D(AtiyahForm::from_parts(theta));
  c.expect(d_D(omega).is_zero(), "d_D omega != 0");
  Multiderivation j = jacobi_from_contact(theta);
  c.expect(atiyah_form_from_jacobi(j) == omega, "J^{-1} != omega");
  VectorField e = j.Q().as_vector();
  c.expect(e == vf(m, {"0", "0", "1"}), "E = " + to_string(e));
  c.expect((evaluate(theta, {e}) - Expr(1)).is_zero(), "i_E theta != 1");
  c.expect(interior(e, ext_d(theta)).is_zero(), "i_E d theta != 0");

  HomogChart hc(m);
  Form wt = symplectize_contact(hc, theta);
  const Chart& ext = hc.extended();
  Form rtheta = form(ext, 1, {{{2}, "r"}, {{0}, "-r*y"}});
  c.expect(wt == oracle::ext_d_alternating_sum(rtheta), "omega~ != d(r theta)");
  c.expect(lie_derivative(hc.euler(), wt) == wt, "L_Z omega~ != omega~");
  Form top = wedge(wt, wt);
  c.expect(!top.is_zero(), "omega~ ^ omega~ = 0");
  return "d_D-closed, E = d_z, omega~ = d(r theta) homogeneous with omega~ ^ omega~ = " + to_string(top.get({0, 1, 2, 3}));
}

std::string run_tool(const std::string& args, int& code) {
  std::string cmd = std::string(LBC_TOOL_PATH) + " " + args;
  std::string out;
  code = -1;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int st = pclose(f);
  code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

std::string ac10(Crit& c) {
  int code1 = 0, code2 = 0;
  std::string a = run_tool("--gallery --format json --seed 42", code1);
  std::string b = run_tool("--gallery --format json --seed 42", code2);
  c.expect(code1 == 0 && code2 == 0, "exit codes " + std::to_string(code1) + ", " + std::to_string(code2));
  c.expect(!a.empty() && a == b, "reports differ");
  int unknown = 0, checks = 0;
  auto scenarios = cli::gallery();
  for (const auto& s : scenarios) {
    cli::RunReport r = cli::run(s, 42);
    unknown += r.unknown_count();
    checks += static_cast<int>(r.checks.size());
  }
  c.expect(unknown == 0, std::to_string(unknown) + " unknown verdicts");
  c.expect(a.find("\"verdict\": \"unknown\"") == std::string::npos, "unknown verdict in JSON");
  return std::to_string(scenarios.size()) + " scenarios, " + std::to_string(checks) +
         " checks, exit 0, identical JSON, no unknown verdicts";
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<std::string(Crit&)>>> criteria = {
      {"AC01", ac1}, {"AC02", ac2}, {"AC03", ac3}, {"AC04", ac4}, {"AC05", ac5},
      {"AC06", ac6}, {"AC07", ac7}, {"AC08", ac8}, {"AC09", ac9}, {"AC10", ac10},
  };
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    Crit c;
    std::string summary;
    try {
      summary = fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    bool ok = c.failures == 0;
    failed += !ok;
    std::cout << id << " " << (ok ? "PASS" : "FAIL") << "  " << summary;
    if (!ok) std::cout << "  [" << c.why.str() << "]";
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
