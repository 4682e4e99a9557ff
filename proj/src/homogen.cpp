#include "lbc/homogen.hpp"

#include <algorithm>

#include "lbc/errors.hpp"
#include "lbc/matrix.hpp"

namespace lbc {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

int count_r(const Index& idx, int r) { return static_cast<int>(std::count(idx.begin(), idx.end(), r)); }

// Weight of a component with the given numbers of covariant slots equal to r
// and contravariant slots different from r.
int weight(int cov_r, int contra_not_r) { return 1 - cov_r - contra_not_r; }

Expr rpow(const HomogChart& hc, int e) { return e == 0 ? Expr(1) : pow(hc.r(), e); }

Expr flip_r(const HomogChart& hc, const Expr& e) { return substitute(e, {{hc.r_name(), -hc.r()}}); }

Expr at_r_one(const HomogChart& hc, const Expr& e) { return substitute(e, {{hc.r_name(), Expr(1)}}); }

// One tensor component together with the number of its slots equal to r.
struct Comp {
  Expr value;
  int r_slots;
};

AxiomResult parity_axiom(const HomogChart& hc, const std::vector<Comp>& comps, int m, std::uint64_t seed) {
  std::vector<Expr> res;
  const bool even = (1 - m) % 2 == 0;
  for (const auto& c : comps) {
    Expr pulled = flip_r(hc, c.value);
    if (c.r_slots % 2 != 0) pulled = -pulled;
    Expr d = pulled - (even ? c.value : -c.value);
    if (!d.is_zero()) res.push_back(d);
  }
  return check_zero("parity", "h_{-1}^* T = (-1)^(1-m) T", res, seed);
}

HomogeneityCertificate make_certificate(const HomogChart& hc, std::string kind, int m,
                                        const std::vector<Expr>& euler_res, const std::vector<Comp>& comps,
                                        std::uint64_t seed) {
  HomogeneityCertificate cert;
  cert.kind = std::move(kind);
  cert.m = m;
  cert.report.kind = "homogeneity";
  cert.report.seed = seed;
  cert.report.axioms.push_back(check_zero("euler", "L_Z T = (1-m) T", euler_res, seed));
  cert.report.axioms.push_back(parity_axiom(hc, comps, m, seed));
  cert.report.notes.push_back("convention: Z = r d_r corresponds to +1 (Z(r l) = r l)");
  return cert;
}

void require_homogeneous(const HomogeneityCertificate& c) {
  if (!c.passed()) {
    std::string why;
    for (const auto& a : c.report.axioms)
      if (a.outcome() != Verdict::Pass) why += " " + a.name + ": " + a.residual;
    throw NotHomogeneous(c.kind + " is not homogeneous:" + why);
  }
}

std::vector<Expr> nonzero_of(const std::vector<Expr>& v) {
  std::vector<Expr> r;
  for (const auto& e : v)
    if (!e.is_zero()) r.push_back(e);
  return r;
}

// Removes r^e and restricts to r = 1.
Expr strip(const HomogChart& hc, const Expr& value, int e) { return at_r_one(hc, rpow(hc, -e) * value); }

}  // namespace

HomogChart::HomogChart(Chart base, const std::string& r) : base_(std::move(base)) {
  if (base_.has(r)) throw ChartMismatch("fiber variable '" + r + "' already belongs to chart '" + base_.name() + "'");
  auto vars = base_.vars();
  vars.push_back(r);
  ext_ = Chart(base_.name() + "~", vars);
}

VectorField HomogChart::euler() const {
  VectorField z(ext_);
  z[r_index()] = r();
  return z;
}

// ---------------------------------------------------------------- homogenize

Expr homogenize_section(const HomogChart& hc, const Expr& lambda) { return hc.r() * lambda; }

VectorField homogenize_derivation(const HomogChart& hc, const Derivation& d) {
  require_same_chart(hc.base(), d.chart(), "homogenize_derivation");
  std::vector<Expr> c = d.X.c;
  c.push_back(hc.r() * d.f);
  return VectorField(hc.extended(), c);
}

Form homogenize_jet(const HomogChart& hc, const JetSection& psi) {
  return homogenize(hc, AtiyahForm::from_jet(psi));
}

Form homogenize(const HomogChart& hc, const AtiyahForm& w) {
  require_same_chart(hc.base(), w.chart(), "homogenize");
  int r = hc.r_index();
  Form out(hc.extended(), w.degree());
  for (const auto& [idx, e] : w.frame().components()) out.set(idx, rpow(hc, weight(count_r(idx, r), 0)) * e);
  return out;
}

Multivector homogenize(const HomogChart& hc, const Multiderivation& d) {
  require_same_chart(hc.base(), d.chart(), "homogenize");
  int r = hc.r_index();
  Multivector out(hc.extended(), d.degree());
  for (const auto& [idx, e] : d.frame().components()) {
    int not_r = static_cast<int>(idx.size()) - count_r(idx, r);
    out.set(idx, rpow(hc, weight(0, not_r)) * e);
  }
  return out;
}

Tensor11 homogenize(const HomogChart& hc, const AtiyahTensor11& t) {
  require_same_chart(hc.base(), t.chart, "homogenize");
  int r = hc.r_index(), size = t.size();
  Tensor11 out(hc.extended());
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      out.m[u(a)][u(b)] = rpow(hc, weight(b == r ? 1 : 0, a != r ? 1 : 0)) * t.at(a, b);
  return out;
}

VectorValued2Form homogenize(const HomogChart& hc, const AtiyahVectorValued2Form& t) {
  require_same_chart(hc.base(), t.chart, "homogenize");
  int r = hc.r_index();
  VectorValued2Form out(hc.extended());
  for (std::size_t c = 0; c < t.out.size(); ++c)
    for (const auto& [idx, e] : t.out[c].components())
      out.out[c].set(idx, rpow(hc, weight(count_r(idx, r), static_cast<int>(c) != r ? 1 : 0)) * e);
  return out;
}

// ---------------------------------------------------------------- certificates

HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const Expr& f, std::uint64_t seed) {
  Expr res = apply(hc.euler(), f) - f;
  return make_certificate(hc, "function", 0, nonzero_of({res}), {{f, 0}}, seed);
}

HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const VectorField& x, std::uint64_t seed) {
  require_same_chart(hc.extended(), x.chart, "certify_homogeneous");
  std::vector<Comp> comps;
  for (int i = 0; i < x.dim(); ++i) comps.push_back({x[i], i == hc.r_index() ? 1 : 0});
  return make_certificate(hc, "vector field", 1, residuals(lie_bracket(hc.euler(), x)), comps, seed);
}

HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const Form& w, std::uint64_t seed) {
  require_same_chart(hc.extended(), w.chart, "certify_homogeneous");
  std::vector<Comp> comps;
  for (const auto& [idx, e] : w.a.components()) comps.push_back({e, count_r(idx, hc.r_index())});
  return make_certificate(hc, "form", 0, residuals(lie_derivative(hc.euler(), w) - w), comps, seed);
}

HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const Multivector& p, std::uint64_t seed) {
  require_same_chart(hc.extended(), p.chart, "certify_homogeneous");
  int m = p.degree();
  std::vector<Comp> comps;
  for (const auto& [idx, e] : p.a.components()) comps.push_back({e, count_r(idx, hc.r_index())});
  Multivector res = lie_derivative(hc.euler(), p) - Expr(1 - m) * p;
  return make_certificate(hc, "multivector", m, residuals(res), comps, seed);
}

HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const Tensor11& n, std::uint64_t seed) {
  require_same_chart(hc.extended(), n.chart, "certify_homogeneous");
  int r = hc.r_index();
  std::vector<Comp> comps;
  for (int a = 0; a < n.dim(); ++a)
    for (int b = 0; b < n.dim(); ++b) comps.push_back({n.at(a, b), (a == r ? 1 : 0) + (b == r ? 1 : 0)});
  return make_certificate(hc, "(1,1)-tensor", 1, residuals(lie_derivative(hc.euler(), n)), comps, seed);
}

HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const VectorValued2Form& t, std::uint64_t seed) {
  require_same_chart(hc.extended(), t.chart, "certify_homogeneous");
  int r = hc.r_index(), n = t.chart.dim();
  VectorField z = hc.euler();
  // (L_Z T)^c_ab = Z(T^c_ab) - T^k_ab d_k Z^c + T^c_kb d_a Z^k + T^c_ak d_b Z^k
  std::vector<Expr> res;
  std::vector<Comp> comps;
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        Expr v = t.out[u(c)].get({a, b});
        comps.push_back({v, (c == r) + (a == r) + (b == r)});
        Expr l = apply(z, v);
        for (int k = 0; k < n; ++k) {
          const std::string& xk = t.chart.var(k);
          l -= t.out[u(k)].get({a, b}) * differentiate(z[c], xk);
          l += t.out[u(c)].get({k, b}) * differentiate(z[k], t.chart.var(a));
          l += t.out[u(c)].get({a, k}) * differentiate(z[k], t.chart.var(b));
        }
        if (!l.is_zero()) res.push_back(l);
      }
  return make_certificate(hc, "vector-valued 2-form", 1, res, comps, seed);
}

// ---------------------------------------------------------------- dehomogenize

Expr dehomogenize_section(const HomogChart& hc, const Expr& f) {
  require_homogeneous(certify_homogeneous(hc, f));
  return strip(hc, f, 1);
}

Derivation dehomogenize_derivation(const HomogChart& hc, const VectorField& x) {
  require_homogeneous(certify_homogeneous(hc, x));
  int r = hc.r_index();
  std::vector<Expr> v;
  for (int i = 0; i < x.dim(); ++i) v.push_back(strip(hc, x[i], weight(0, i != r ? 1 : 0)));
  return Derivation::from_frame(hc.base(), v);
}

JetSection dehomogenize_jet(const HomogChart& hc, const Form& w) {
  if (w.degree() != 1) throw KindMismatch("a jet homogenizes to a 1-form");
  return dehomogenize(hc, w).as_jet();
}

AtiyahForm dehomogenize(const HomogChart& hc, const Form& w) {
  require_homogeneous(certify_homogeneous(hc, w));
  int r = hc.r_index();
  AtiyahForm out(hc.base(), w.degree());
  for (const auto& [idx, e] : w.a.components()) out.frame().set(idx, strip(hc, e, weight(count_r(idx, r), 0)));
  return out;
}

Multiderivation dehomogenize(const HomogChart& hc, const Multivector& p) {
  if (p.degree() == 0) throw KindMismatch("multiderivations have degree >= 1");
  require_homogeneous(certify_homogeneous(hc, p));
  int r = hc.r_index();
  Multiderivation out(hc.base(), p.degree());
  for (const auto& [idx, e] : p.a.components()) {
    int not_r = static_cast<int>(idx.size()) - count_r(idx, r);
    out.frame().set(idx, strip(hc, e, weight(0, not_r)));
  }
  return out;
}

AtiyahTensor11 dehomogenize(const HomogChart& hc, const Tensor11& n) {
  require_homogeneous(certify_homogeneous(hc, n));
  int r = hc.r_index();
  AtiyahTensor11 out(hc.base());
  for (int a = 0; a < n.dim(); ++a)
    for (int b = 0; b < n.dim(); ++b)
      out.m[u(a)][u(b)] = strip(hc, n.at(a, b), weight(b == r ? 1 : 0, a != r ? 1 : 0));
  return out;
}

AtiyahVectorValued2Form dehomogenize(const HomogChart& hc, const VectorValued2Form& t) {
  require_homogeneous(certify_homogeneous(hc, t));
  int r = hc.r_index();
  AtiyahVectorValued2Form out(hc.base());
  for (std::size_t c = 0; c < t.out.size(); ++c)
    for (const auto& [idx, e] : t.out[c].components())
      out.out[c].set(idx, strip(hc, e, weight(count_r(idx, r), static_cast<int>(c) != r ? 1 : 0)));
  return out;
}

// ---------------------------------------------------------------- Poissonization, symplectization

Poissonization poissonize(const HomogChart& hc, const Multiderivation& j) {
  if (j.degree() != 2) throw DegreeError("poissonize needs a biderivation");
  return {homogenize(hc, j), hc.euler()};
}

void require_contact(const Form& theta) {
  if (theta.degree() != 1) throw DegreeError("contact form must be a 1-form");
  int n = theta.dim();
  if (n % 2 == 0) throw NotContact("contact forms live on odd-dimensional charts");
  Form dth = ext_d(theta);
  Form top = theta;
  for (int i = 0; i < n / 2; ++i) top = wedge(top, dth);
  Index all;
  for (int i = 0; i < n; ++i) all.push_back(i);
  Expr vol = top.get(all);
  if (!is_zero(vol, 42).nonzero()) throw NotContact("theta ^ (d theta)^" + std::to_string(n / 2) + " vanishes: " + to_string(vol));
}

Form symplectize_contact(const HomogChart& hc, const Form& theta) {
  require_same_chart(hc.base(), theta.chart, "symplectize_contact");
  require_contact(theta);
  return homogenize(hc, d_D(AtiyahForm::from_parts(theta)));
}

Form contact_from_symplectic_atiyah(const AtiyahForm& omega) {
  if (omega.degree() != 2) throw DegreeError("expected an Atiyah 2-form");
  int size = omega.chart().dim() + 1;
  Matrix m = zero_matrix(size, size);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) m[u(a)][u(b)] = omega.frame().get({a, b});
  Expr det = determinant(m);
  if (!is_zero(det, 42).nonzero()) throw NotNondegenerate("Atiyah 2-form is degenerate: det = " + to_string(det));
  return interior(Derivation::identity(omega.chart()), omega).beta();
}

}  // namespace lbc
