#include "lbc/structures.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

#include "lbc/errors.hpp"
#include "lbc/homogen.hpp"
#include "lbc/matrix.hpp"
#include "lbc/random.hpp"

namespace lbc {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

void append(std::vector<Expr>& to, const std::vector<Expr>& from) { to.insert(to.end(), from.begin(), from.end()); }

const PolyShape kPairShape{2, 2, 3, 0.3};
constexpr int kRandomPairs = 5;

const char* const kPnCompat = "L_{pi# a} N* b - L_{pi# b} N* a - d pi(N* a, b) = N* [a, b]_pi";
const char* const kJnCompat = "L_{J# psi} N+ chi - L_{J# chi} N+ psi - d_D J(N+ psi, chi) = N+ [psi, chi]_J";
const char* const kTypoNote =
    "compatibility displays d<pi_N, alpha ^ beta> next to 1-forms eta, theta; read as d<pi_N, eta ^ theta>";

Form random_covector(RandomPoly& rng, const Chart& ch) {
  Form f(ch, 1);
  for (int i = 0; i < ch.dim(); ++i) f.set({i}, rng.poly(ch.vars(), kPairShape));
  return f;
}

JetSection random_jet(RandomPoly& rng, const Chart& ch) {
  std::vector<Expr> v;
  for (int i = 0; i <= ch.dim(); ++i) v.push_back(rng.poly(ch.vars(), kPairShape));
  return JetSection::from_frame(ch, v);
}

std::vector<std::pair<Form, Form>> covector_pairs(const Chart& ch, std::uint64_t seed) {
  std::vector<std::pair<Form, Form>> out;
  for (int a = 0; a < ch.dim(); ++a)
    for (int b = 0; b < ch.dim(); ++b) out.emplace_back(Form::coordinate(ch, a), Form::coordinate(ch, b));
  RandomPoly rng(seed);
  for (int i = 0; i < kRandomPairs; ++i) {
    Form a = random_covector(rng, ch);
    Form b = random_covector(rng, ch);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

JetSection unit_jet(const Chart& ch, int a) {
  std::vector<Expr> v(u(ch.dim() + 1));
  v[u(a)] = Expr(1);
  return JetSection::from_frame(ch, v);
}

AxiomResult poisson_axiom(const Multivector& pi, std::uint64_t seed, const char* name = "poisson") {
  return check_zero(name, "[pi, pi] = 0", residuals(schouten(pi, pi)), seed);
}

AxiomResult torsion_axiom(const Tensor11& n, std::uint64_t seed) {
  return check_zero("nijenhuis", "T_N = 0", nijenhuis_torsion(n).residuals(), seed);
}

AxiomResult pn_skewness(const Multivector& pi, const Tensor11& n, std::uint64_t seed) {
  std::vector<Expr> res;
  const Chart& ch = pi.chart;
  for (int a = 0; a < ch.dim(); ++a)
    for (int b = a; b < ch.dim(); ++b) {
      Form fa = Form::coordinate(ch, a), fb = Form::coordinate(ch, b);
      Expr e = evaluate(pi, {fa, dual_apply(n, fb)}) + evaluate(pi, {fb, dual_apply(n, fa)});
      if (!e.is_zero()) res.push_back(e);
    }
  return check_zero("skewness", "pi(a, N* b) + pi(b, N* a) = 0", res, seed);
}

AxiomResult pn_compatibility(const Multivector& pi, const Tensor11& n, std::uint64_t seed) {
  std::vector<Expr> res;
  for (const auto& [a, b] : covector_pairs(pi.chart, seed)) {
    Form na = dual_apply(n, a), nb = dual_apply(n, b);
    Form lhs = lie_derivative(sharp(pi, a), nb) - lie_derivative(sharp(pi, b), na) -
               ext_d(pi.chart, evaluate(pi, {na, b}));
    append(res, residuals(lhs - dual_apply(n, koszul_bracket(pi, a, b))));
  }
  return check_zero("compatibility", kPnCompat, res, seed);
}

Verdict combine(std::initializer_list<Verdict> vs) {
  bool unknown = false;
  for (Verdict v : vs) {
    if (v == Verdict::Fail) return Verdict::Fail;
    if (v == Verdict::Unknown) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::Pass;
}

Matrix frame_matrix(const Alternating& a) {
  int n = a.dim();
  Matrix m = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m[u(i)][u(j)] = a.get({i, j});
  return m;
}

Alternating from_matrix(const Matrix& m) {
  int n = static_cast<int>(m.size());
  Alternating a(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a.set({i, j}, m[u(i)][u(j)]);
  return a;
}

// -M^{-1}, or nullopt when M is singular.
std::optional<Matrix> negated_inverse(const Matrix& m) {
  auto inv = inverse(m);
  if (!inv) return std::nullopt;
  return Expr(-1) * *inv;
}

}  // namespace

StructureReport verify_poisson(const Multivector& pi, std::uint64_t seed) {
  if (pi.degree() != 2) throw DegreeError("verify_poisson expects a bivector");
  Report r;
  r.kind = "poisson";
  r.seed = seed;
  r.axioms.push_back(poisson_axiom(pi, seed));
  return r;
}

StructureReport verify_jacobi(const Multiderivation& j, std::uint64_t seed) {
  if (j.degree() != 2) throw DegreeError("verify_jacobi expects a biderivation");
  Report r;
  r.kind = "jacobi";
  r.seed = seed;
  r.axioms.push_back(check_zero("jacobi", "[J, J] = 0", residuals(sj_bracket(j, j)), seed));
  return r;
}

StructureReport verify_homogeneous_poisson(const Multivector& pi, const VectorField& zeta, std::uint64_t seed) {
  require_same_chart(pi.chart, zeta.chart, "verify_homogeneous_poisson");
  Report r = verify_poisson(pi, seed);
  r.kind = "homogeneous-poisson";
  r.axioms.push_back(check_zero("homogeneity", "L_zeta pi + pi = 0", residuals(lie_derivative(zeta, pi) + pi), seed));
  return r;
}

Multivector pi_n(const Multivector& pi, const Tensor11& n) { return contract11(n, pi, 0); }

StructureReport verify_pn(const Multivector& pi, const Tensor11& n, std::uint64_t seed) {
  require_same_chart(pi.chart, n.chart, "verify_pn");
  if (pi.degree() != 2) throw DegreeError("verify_pn expects a bivector");
  Report r;
  r.kind = "poisson-nijenhuis";
  r.seed = seed;
  r.axioms.push_back(poisson_axiom(pi, seed));
  r.axioms.push_back(torsion_axiom(n, seed));
  r.axioms.push_back(pn_skewness(pi, n, seed));
  r.axioms.push_back(pn_compatibility(pi, n, seed));
  r.notes.push_back(kTypoNote);
  return r;
}

Multivector invert_symplectic(const Form& omega) {
  if (omega.degree() != 2) throw DegreeError("expected a 2-form");
  auto inv = negated_inverse(frame_matrix(omega.a));
  if (!inv) throw DegenerateForm("2-form is degenerate: " + to_string(omega));
  return Multivector(omega.chart, from_matrix(*inv));
}

StructureReport magri_morosi(const Form& omega, const Tensor11& n, std::uint64_t seed) {
  require_same_chart(omega.chart, n.chart, "magri_morosi");
  Multivector pi = invert_symplectic(omega);
  Report r;
  r.kind = "symplectic-nijenhuis";
  r.seed = seed;

  AxiomResult hyp = pn_skewness(pi, n, seed);
  r.axioms.push_back(hyp);

  const char* a1 = "d omega_N = 0";
  const char* a2 = "d omega_{N^2} = 0";
  if (hyp.outcome() == Verdict::Pass) {
    Form wn = contract11(n, omega, 0);
    Form wn2 = contract11(compose(n, n), omega, 0);
    r.axioms.push_back(check_zero("closed-omega-N", a1, residuals(ext_d(wn)), seed));
    r.axioms.push_back(check_zero("closed-omega-N2", a2, residuals(ext_d(wn2)), seed));
    r.axioms.push_back(torsion_axiom(n, seed));
    r.axioms.push_back(pn_compatibility(pi, n, seed));
  } else {
    const std::string why = "hypothesis pi(a, N* b) + pi(b, N* a) = 0 does not hold";
    r.axioms.push_back(failed_axiom("closed-omega-N", a1, why));
    r.axioms.push_back(failed_axiom("closed-omega-N2", a2, why));
    r.axioms.push_back(failed_axiom("nijenhuis", "T_N = 0", why));
    r.axioms.push_back(failed_axiom("compatibility", kPnCompat, why));
  }

  Verdict b1 = magri_morosi_branch(r, 1), b2 = magri_morosi_branch(r, 2);
  AxiomResult agree;
  agree.name = "branches-agree";
  agree.anchor = "(d omega_N = 0 and d omega_{N^2} = 0) <=> (T_N = 0 and compatibility)";
  agree.verdict.seed = seed;
  if (b1 == Verdict::Unknown || b2 == Verdict::Unknown) {
    agree.verdict.kind = ZeroVerdict::Kind::Unknown;
  } else if (b1 != b2) {
    agree.verdict.kind = ZeroVerdict::Kind::NonZero;
    agree.residual = std::string("branch 1 ") + to_string(b1) + ", branch 2 " + to_string(b2);
    agree.residual_count = 1;
  }
  r.axioms.push_back(agree);
  r.notes.push_back(std::string("branch 1: ") + to_string(b1) + ", branch 2: " + to_string(b2));
  return r;
}

Verdict magri_morosi_branch(const StructureReport& r, int branch) {
  if (branch == 1) return combine({r.verdict_of("closed-omega-N"), r.verdict_of("closed-omega-N2")});
  if (branch == 2) return combine({r.verdict_of("nijenhuis"), r.verdict_of("compatibility")});
  throw std::invalid_argument("branch must be 1 or 2");
}

StructureReport verify_jn(const Multiderivation& j, const AtiyahTensor11& n, std::uint64_t seed) {
  require_same_chart(j.chart(), n.chart, "verify_jn");
  if (j.degree() != 2) throw DegreeError("verify_jn expects a biderivation");
  const Chart& ch = j.chart();
  Report r = verify_jacobi(j, seed);
  r.kind = "jacobi-nijenhuis";
  r.axioms.push_back(check_zero("nijenhuis", "T_N = 0", atiyah_torsion(n).residuals(), seed));

  std::vector<Expr> skew;
  for (int a = 0; a <= ch.dim(); ++a)
    for (int b = a; b <= ch.dim(); ++b) {
      JetSection pa = unit_jet(ch, a), pb = unit_jet(ch, b);
      Expr e = evaluate(j, {pa, apply_dagger(n, pb)}) + evaluate(j, {pb, apply_dagger(n, pa)});
      if (!e.is_zero()) skew.push_back(e);
    }
  r.axioms.push_back(check_zero("skewness", "J(psi, N+ chi) + J(chi, N+ psi) = 0", skew, seed));

  std::vector<std::pair<JetSection, JetSection>> pairs;
  for (int a = 0; a <= ch.dim(); ++a)
    for (int b = 0; b <= ch.dim(); ++b) pairs.emplace_back(unit_jet(ch, a), unit_jet(ch, b));
  RandomPoly rng(seed);
  for (int i = 0; i < kRandomPairs; ++i) {
    JetSection a = random_jet(rng, ch);
    JetSection b = random_jet(rng, ch);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  auto lie = [](const Derivation& d, const JetSection& psi) { return lie_derivative(d, AtiyahForm::from_jet(psi)); };
  auto d_of = [&](const Expr& lambda) { return d_D(AtiyahForm::section(ch, lambda)); };
  std::vector<Expr> compat;
  for (const auto& [psi, chi] : pairs) {
    JetSection npsi = apply_dagger(n, psi), nchi = apply_dagger(n, chi);
    Derivation jp = sharp(j, psi), jc = sharp(j, chi);
    AtiyahForm bracket = lie(jp, chi) - lie(jc, psi) - d_of(evaluate(j, {psi, chi}));
    AtiyahForm lhs = lie(jp, nchi) - lie(jc, npsi) - d_of(evaluate(j, {npsi, chi}));
    append(compat, residuals(lhs - AtiyahForm::from_jet(apply_dagger(n, bracket.as_jet()))));
  }
  r.axioms.push_back(check_zero("compatibility", kJnCompat, compat, seed));
  r.axioms.push_back(check_zero("skew-J_N", "J(N+ psi, chi) + J(N+ chi, psi) = 0", atiyah_skew_residual(n, j, 0), seed));
  return r;
}

HolomorphicBivector holomorphic_bivector(const Multivector& pi, const Tensor11& n) {
  return {pi, -pi_n(pi, n)};
}

StructureReport verify_holomorphic_poisson(const Multivector& pi, const Tensor11& n, std::uint64_t seed) {
  if (pi.dim() % 2 != 0) throw OddDimension("holomorphic structures need an even-dimensional chart");
  Report r = verify_pn(pi, n, seed);
  r.kind = "holomorphic-poisson";
  Tensor11 sq = compose(n, n) + Tensor11::identity(n.chart);
  r.axioms.push_back(check_zero("almost-complex", "N^2 + 1 = 0", residuals(sq), seed));
  if (skew_residual(n, pi, 0).empty()) {
    HolomorphicBivector h = holomorphic_bivector(pi, n);
    r.axioms.push_back(poisson_axiom(-h.im, seed, "pi_N-poisson"));
    r.notes.push_back("Re Pi = " + to_string(h.re) + "; Im Pi = " + to_string(h.im));
  } else {
    r.axioms.push_back(failed_axiom("pi_N-poisson", "[pi, pi] = 0", "pi_N is not skew-symmetric"));
  }
  return r;
}

Multiderivation jacobi_from_contact(const Form& theta) {
  require_contact(theta);
  AtiyahForm omega = d_D(AtiyahForm::from_parts(theta));
  auto inv = negated_inverse(frame_matrix(omega.frame()));
  if (!inv) throw NotContact("d_D theta is degenerate");
  return Multiderivation(theta.chart, from_matrix(*inv));
}

AtiyahForm atiyah_form_from_jacobi(const Multiderivation& j) {
  if (j.degree() != 2) throw DegreeError("expected a biderivation");
  auto inv = negated_inverse(frame_matrix(j.frame()));
  if (!inv) throw DegenerateJacobi("biderivation is degenerate");
  return AtiyahForm(j.chart(), from_matrix(*inv));
}

}  // namespace lbc
