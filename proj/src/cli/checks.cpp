#include "lbc/cli/checks.hpp"

#include <algorithm>

#include "lbc/algebroid.hpp"
#include "lbc/errors.hpp"
#include "lbc/homogen.hpp"
#include "lbc/structures.hpp"

namespace lbc::cli {

namespace {

using A = ObjectType;

template <class T>
const T& get(const std::map<std::string, T>& m, const CheckSpec& c, const std::string& arg) {
  return m.at(c.args.at(arg));
}

const std::string* opt_arg(const CheckSpec& c, const std::string& arg) {
  auto it = c.args.find(arg);
  return it == c.args.end() ? nullptr : &it->second;
}

// Copies the axioms of `from` into `into`, prefixing their names.
void absorb(Report& into, const Report& from, const std::string& prefix) {
  for (auto a : from.axioms) {
    a.name = prefix + a.name;
    into.axioms.push_back(std::move(a));
  }
  for (const auto& n : from.notes) into.notes.push_back(prefix + n);
}

HomogChart homog_chart(const Scenario& s) { return HomogChart(s.chart, s.r_name); }

const ChartGroupoid& groupoid(const Scenario& s, const CheckSpec& c) { return get(s.groupoids, c, "groupoid"); }

std::vector<Expr> coordinate_sections(const Chart& ch) {
  std::vector<Expr> out{Expr(1)};
  for (const auto& v : ch.vars()) out.push_back(Expr::var(v));
  return out;
}

// Top wedge power of a 2-form on an even chart.
Expr top_power(const Form& w) {
  Form acc = Form::function(w.chart, Expr(1));
  for (int i = 0; i < w.dim() / 2; ++i) acc = wedge(acc, w);
  Index all;
  for (int i = 0; i < w.dim(); ++i) all.push_back(i);
  return acc.get(all);
}

Report run_jacobi_from_contact(const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
  const Form& theta = get(s.forms, c, "theta");
  Report r;
  r.kind = "jacobi-from-contact";
  r.seed = seed;
  Multiderivation j = jacobi_from_contact(theta);
  // the Reeb field is the Q part of J_theta
  VectorField reeb = j.Q().as_vector();
  Form dtheta = ext_d(theta);
  r.axioms.push_back(check_zero("reeb-normalization", "theta(E) = 1", {evaluate(theta, {reeb}) - Expr(1)}, seed));
  r.axioms.push_back(check_zero("reeb-kernel", "i_E d theta = 0", residuals(interior(reeb, dtheta)), seed));
  r.axioms.push_back(verify_jacobi(j, seed).axioms.front());
  AtiyahForm back = atiyah_form_from_jacobi(j);
  AtiyahForm expected = d_D(AtiyahForm::from_parts(theta));
  r.axioms.push_back(check_zero("round-trip", "(J_theta)^{-1} = d_D theta", residuals(back - expected), seed));
  r.axioms.push_back(check_zero("closed", "d_D (J_theta)^{-1} = 0", residuals(d_D(back)), seed));
  if (const std::string* name = opt_arg(c, "J")) {
    const Multiderivation& want = s.biderivations.at(*name);
    r.axioms.push_back(check_zero("expected", "J_theta = " + *name, residuals(j - want), seed));
  }
  r.notes.push_back("E = " + to_string(reeb));
  return r;
}

Report run_symplectize(const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
  const Form& theta = get(s.forms, c, "theta");
  HomogChart hc(theta.chart, s.r_name);
  Form w = symplectize_contact(hc, theta);
  Report r;
  r.kind = "symplectization";
  r.seed = seed;
  r.axioms.push_back(check_zero("closed", "d omega~ = 0", residuals(ext_d(w)), seed));
  r.axioms.push_back(check_zero("homogeneous", "L_Z omega~ = omega~",
                                residuals(lie_derivative(hc.euler(), w) - w), seed));
  ZeroVerdict v = is_zero(top_power(w), seed);
  AxiomResult nd;
  nd.name = "nondegenerate";
  nd.anchor = "omega~ ^ .. ^ omega~ != 0";
  nd.verdict = v;
  // nonvanishing of the top power is the pass condition
  if (v.nonzero()) nd.verdict.kind = ZeroVerdict::Kind::Zero;
  else if (v.zero()) nd.verdict.kind = ZeroVerdict::Kind::NonZero, nd.residual = "0";
  r.axioms.push_back(nd);
  r.notes.push_back("omega~ = " + to_string(w));
  return r;
}

Report run_poissonize(const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
  const Multiderivation& j = get(s.biderivations, c, "J");
  HomogChart hc(j.chart(), s.r_name);
  Poissonization p = poissonize(hc, j);
  Report r = verify_homogeneous_poisson(p.pi, p.euler, seed);
  r.kind = "poissonization";
  std::vector<Expr> res;
  auto sec = coordinate_sections(j.chart());
  for (const auto& l : sec)
    for (const auto& m : sec) {
      Expr lt = homogenize_section(hc, l), mt = homogenize_section(hc, m);
      Expr lhs = evaluate(p.pi, {ext_d(hc.extended(), lt), ext_d(hc.extended(), mt)});
      res.push_back(lhs - homogenize_section(hc, apply_multiderivation(j, {l, m})));
    }
  r.axioms.push_back(check_zero("bracket", "{l~, m~}_pi~ = ({l, m}_J)~", res, seed));
  r.notes.push_back("pi~ = " + to_string(p.pi));
  return r;
}

Report run_roundtrip(const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
  HomogChart hc = homog_chart(s);
  Report r;
  r.kind = "homogenization-roundtrip";
  r.seed = seed;
  if (const std::string* n = opt_arg(c, "J")) {
    const Multiderivation& j = s.biderivations.at(*n);
    Multivector t = homogenize(hc, j);
    absorb(r, certify_homogeneous(hc, t, seed).report, *n + ": ");
    r.axioms.push_back(check_zero(*n + ": round-trip", "(J~)^ = J", residuals(dehomogenize(hc, t) - j), seed));
  }
  if (const std::string* n = opt_arg(c, "U")) {
    const AtiyahTensor11& u = s.atiyah_tensors.at(*n);
    Tensor11 t = homogenize(hc, u);
    absorb(r, certify_homogeneous(hc, t, seed).report, *n + ": ");
    AtiyahTensor11 back = dehomogenize(hc, t);
    std::vector<Expr> res;
    for (int a = 0; a < u.size(); ++a)
      for (int b = 0; b < u.size(); ++b) res.push_back(back.at(a, b) - u.at(a, b));
    r.axioms.push_back(check_zero(*n + ": round-trip", "(U~)^ = U", res, seed));
  }
  if (const std::string* n = opt_arg(c, "w")) {
    const AtiyahForm& w = s.atiyah_forms.at(*n);
    Form t = homogenize(hc, w);
    absorb(r, certify_homogeneous(hc, t, seed).report, *n + ": ");
    r.axioms.push_back(check_zero(*n + ": round-trip", "(w~)^ = w", residuals(dehomogenize(hc, t) - w), seed));
    r.axioms.push_back(check_zero(*n + ": naturality", "(d_D w)~ = d w~",
                                  residuals(homogenize(hc, d_D(w)) - ext_d(t)), seed));
  }
  return r;
}

Report run_spencer_ell_identity(const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
  const ChartGroupoid& g = groupoid(s, c);
  SpencerData sd = spencer_of_form(g, get(s.forms, c, "omega"));
  Report r;
  r.kind = "spencer-ell-identity";
  r.seed = seed;
  std::vector<Expr> res;
  const Chart& m = g.M;
  for (std::size_t a = 0; a < sd.ell.size(); ++a) {
    if (sd.ell[a].degree() != 1 || static_cast<int>(a) >= m.dim()) {
      r.axioms.push_back(failed_axiom("ell-identity", "l(e_a) = dx_a", "ell is not a 1-form per coordinate"));
      return r;
    }
    Form diff = sd.ell[a] - Form::coordinate(m, static_cast<int>(a));
    for (const auto& e : residuals(diff)) res.push_back(e);
  }
  r.axioms.push_back(check_zero("ell-identity", "l(e_a) = dx_a", res, seed));
  return r;
}

std::vector<CheckKind> build() {
  std::vector<CheckKind> k;
  k.push_back({"verify_poisson", "[pi, pi] = 0", {{"pi", A::Multivector}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_poisson(get(s.multivectors, c, "pi"), seed);
               }});
  k.push_back({"verify_jacobi", "[J, J] = 0", {{"J", A::Biderivation}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_jacobi(get(s.biderivations, c, "J"), seed);
               }});
  k.push_back({"verify_homogeneous_poisson", "Poisson with L_zeta pi = -pi",
               {{"pi", A::Multivector}, {"zeta", A::Vector}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_homogeneous_poisson(get(s.multivectors, c, "pi"), get(s.vectors, c, "zeta"), seed);
               }});
  k.push_back({"check_homogeneity_derivation", "L_zeta - 1 is a derivation of T*M_pi",
               {{"pi", A::Multivector}, {"zeta", A::Vector}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return check_homogeneity_derivation(get(s.multivectors, c, "pi"), get(s.vectors, c, "zeta"), seed);
               }});
  k.push_back({"verify_pn", "Poisson-Nijenhuis axioms", {{"pi", A::Multivector}, {"N", A::Tensor11}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_pn(get(s.multivectors, c, "pi"), get(s.tensors, c, "N"), seed);
               }});
  k.push_back({"verify_pn_spencer", "(d o N*, N*) is a Spencer operator on T*M_pi",
               {{"pi", A::Multivector}, {"N", A::Tensor11}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_spencer(cotangent_algebroid(get(s.multivectors, c, "pi")),
                                       spencer_from_nijenhuis(get(s.tensors, c, "N")), seed);
               }});
  k.push_back({"magri_morosi", "symplectic-Nijenhuis equivalence", {{"omega", A::Form}, {"N", A::Tensor11}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return magri_morosi(get(s.forms, c, "omega"), get(s.tensors, c, "N"), seed);
               }});
  k.push_back({"verify_jn", "Jacobi-Nijenhuis axioms", {{"J", A::Biderivation}, {"U", A::AtiyahTensor11}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_jn(get(s.biderivations, c, "J"), get(s.atiyah_tensors, c, "U"), seed);
               }});
  k.push_back({"verify_pn_homogenized", "(pi~, U~) is Poisson-Nijenhuis",
               {{"J", A::Biderivation}, {"U", A::AtiyahTensor11}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 HomogChart hc = homog_chart(s);
                 Report r = verify_pn(poissonize(hc, get(s.biderivations, c, "J")).pi,
                                      homogenize(hc, get(s.atiyah_tensors, c, "U")), seed);
                 r.kind = "homogenized-poisson-nijenhuis";
                 return r;
               }});
  k.push_back({"verify_holomorphic_poisson", "pi - i pi_N is holomorphic Poisson",
               {{"pi", A::Multivector}, {"N", A::Tensor11}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_holomorphic_poisson(get(s.multivectors, c, "pi"), get(s.tensors, c, "N"), seed);
               }});
  k.push_back({"jacobi_from_contact", "Jacobi structure of a contact form",
               {{"theta", A::Form}, {"J", A::Biderivation, true}}, false, run_jacobi_from_contact});
  k.push_back({"symplectize_contact", "homogeneous symplectization of a contact form", {{"theta", A::Form}}, false,
               run_symplectize});
  k.push_back({"poissonize", "homogeneous Poisson structure of a Jacobi structure", {{"J", A::Biderivation}}, false,
               run_poissonize});
  k.push_back({"homogenize_roundtrip", "homogenization certificates and inverse",
               {{"J", A::Biderivation, true}, {"U", A::AtiyahTensor11, true}, {"w", A::AtiyahForm, true}}, true,
               run_roundtrip});
  k.push_back({"verify_cotangent_algebroid", "T*M_pi is a Lie algebroid", {{"pi", A::Multivector}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_algebroid(cotangent_algebroid(get(s.multivectors, c, "pi")), seed);
               }});
  k.push_back({"verify_jet_algebroid", "J^1 L_J is a Lie algebroid", {{"J", A::Biderivation}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_algebroid(jet_algebroid(get(s.biderivations, c, "J")), seed);
               }});
  k.push_back({"verify_gauge_algebroid", "DL is a Lie algebroid", {}, false,
               [](const Scenario& s, const CheckSpec&, std::uint64_t seed) {
                 return verify_algebroid(gauge_algebroid(s.chart), seed);
               }});
  k.push_back({"verify_groupoid", "groupoid axioms", {{"groupoid", A::Groupoid}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return verify_groupoid(groupoid(s, c), seed);
               }});
  k.push_back({"multiplicative_function", "f(gh) = f(g) + f(h)", {{"groupoid", A::Groupoid}, {"f", A::Function}},
               false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return is_multiplicative_function(groupoid(s, c), get(s.functions, c, "f"), seed);
               }});
  k.push_back({"multiplicative_form", "m* w = pr1* w + pr2* w", {{"groupoid", A::Groupoid}, {"omega", A::Form}},
               false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return is_multiplicative_form(groupoid(s, c), get(s.forms, c, "omega"), seed);
               }});
  k.push_back({"multiplicative_differential", "d omega is multiplicative",
               {{"groupoid", A::Groupoid}, {"omega", A::Form}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return is_multiplicative_form(groupoid(s, c), ext_d(get(s.forms, c, "omega")), seed);
               }});
  k.push_back({"multiplicative_vf", "dm(Z_W) = Z o m",
               {{"groupoid", A::Groupoid}, {"Z", A::Vector}, {"lift", A::Vector}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 return is_multiplicative_vf(groupoid(s, c), get(s.vectors, c, "Z"), get(s.vectors, c, "lift"),
                                             seed);
               }});
  k.push_back({"multiplicative_euler", "the scaling Euler field is multiplicative", {{"groupoid", A::Groupoid}},
               false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 const ChartGroupoid& g = groupoid(s, c);
                 if (!g.euler || !g.euler_lift) throw Error("groupoid '" + g.name + "' has no Euler field");
                 return is_multiplicative_vf(g, *g.euler, *g.euler_lift, seed);
               }});
  k.push_back({"spencer_of_form", "the infinitesimal form (D, l) is a Spencer operator",
               {{"groupoid", A::Groupoid}, {"omega", A::Form}}, false,
               [](const Scenario& s, const CheckSpec& c, std::uint64_t seed) {
                 const ChartGroupoid& g = groupoid(s, c);
                 if (!g.algebroid) throw MissingRightInvariantRule("groupoid '" + g.name + "' has no algebroid");
                 SpencerData sd = spencer_of_form(g, get(s.forms, c, "omega"));
                 Report r = verify_spencer(*g.algebroid, sd, seed);
                 for (std::size_t a = 0; a < sd.ell.size(); ++a)
                   r.notes.push_back("l(e_" + std::to_string(a + 1) + ") = " + to_string(sd.ell[a]));
                 return r;
               }});
  k.push_back({"spencer_ell_identity", "l(e_a) = dx_a", {{"groupoid", A::Groupoid}, {"omega", A::Form}}, false,
               run_spencer_ell_identity});
  return k;
}

}  // namespace

const std::vector<CheckKind>& check_kinds() {
  static const std::vector<CheckKind> kinds = build();
  return kinds;
}

const CheckKind* find_check_kind(std::string_view kind) {
  const auto& ks = check_kinds();
  auto it = std::find_if(ks.begin(), ks.end(), [&](const CheckKind& k) { return k.kind == kind; });
  return it == ks.end() ? nullptr : &*it;
}

}  // namespace lbc::cli
