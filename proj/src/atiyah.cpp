#include "lbc/atiyah.hpp"

#include <algorithm>

#include "lbc/algebroid.hpp"
#include "lbc/errors.hpp"

namespace lbc {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

std::vector<Expr> unit(int size, int i) {
  std::vector<Expr> v(u(size));
  v[u(i)] = Expr(1);
  return v;
}

Index with_last(Index j, int n) {
  j.push_back(n);
  return j;
}

// All (chosen, rest) splittings of {0..m-1} with |chosen| = p, both increasing,
// together with the sign of the permutation chosen ++ rest.
struct Shuffle {
  std::vector<int> order;
  int sign;
};

std::vector<Shuffle> shuffles(int p, int m) {
  std::vector<Shuffle> out;
  for (const auto& chosen : increasing_tuples(m, p)) {
    std::vector<int> order = chosen;
    for (int i = 0; i < m; ++i)
      if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) order.push_back(i);
    Index tmp = order;
    out.push_back({order, sort_with_sign(tmp)});
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Derivation / JetSection

Derivation Derivation::identity(const Chart& ch) { return {VectorField(ch), Expr(1)}; }

Derivation Derivation::coordinate(const Chart& ch, int i) { return {VectorField::coordinate(ch, i), Expr()}; }

Derivation Derivation::from_frame(const Chart& ch, const std::vector<Expr>& v) {
  if (static_cast<int>(v.size()) != ch.dim() + 1) throw ShapeMismatch("derivation frame has wrong length");
  return {VectorField(ch, std::vector<Expr>(v.begin(), v.end() - 1)), v.back()};
}

std::vector<Expr> Derivation::frame() const {
  std::vector<Expr> v = X.c;
  v.push_back(f);
  return v;
}

Expr Derivation::operator()(const Expr& lambda) const { return apply(X, lambda) + f * lambda; }

Derivation commutator(const Derivation& a, const Derivation& b) {
  require_same_chart(a.chart(), b.chart(), "derivation commutator");
  return {lie_bracket(a.X, b.X), apply(a.X, b.f) - apply(b.X, a.f)};
}

JetSection::JetSection(Form a, Expr gg) : alpha(std::move(a)), g(std::move(gg)) {
  if (alpha.degree() != 1) throw DegreeError("jet section needs a 1-form");
}

JetSection JetSection::from_frame(const Chart& ch, const std::vector<Expr>& v) {
  if (static_cast<int>(v.size()) != ch.dim() + 1) throw ShapeMismatch("jet frame has wrong length");
  Form a(ch, 1);
  for (int i = 0; i < ch.dim(); ++i) a.set({i}, v[u(i)]);
  return {a, v.back()};
}

std::vector<Expr> JetSection::frame() const {
  std::vector<Expr> v = alpha.covector();
  v.push_back(g);
  return v;
}

JetSection jet(const Chart& ch, const Expr& lambda) { return {ext_d(ch, lambda), lambda}; }

Expr pair(const JetSection& psi, const Derivation& d) {
  require_same_chart(psi.chart(), d.chart(), "pair");
  return evaluate(psi.alpha, {d.X}) + psi.g * d.f;
}

// ---------------------------------------------------------------- AtiyahForm

AtiyahForm::AtiyahForm(Chart ch, int degree) : chart_(std::move(ch)), frame_(chart_.dim() + 1, degree) {}

AtiyahForm::AtiyahForm(Chart ch, Alternating frame) : chart_(std::move(ch)), frame_(std::move(frame)) {
  if (frame_.dim() != chart_.dim() + 1) throw ShapeMismatch("Atiyah form frame has wrong dimension");
}

AtiyahForm AtiyahForm::from_parts(const Form& beta, const Form& gamma) {
  int k = beta.degree();
  const Chart& ch = beta.chart;
  AtiyahForm w(ch, k);
  for (const auto& [idx, e] : beta.a.components()) w.frame_.set(idx, e);
  // A default-constructed gamma (no chart) stands for zero.
  if (gamma.chart.dim() > 0) {
    require_same_chart(ch, gamma.chart, "Atiyah form parts");
    if (gamma.degree() != k - 1) throw DegreeError("gamma must have degree k-1");
    for (const auto& [idx, e] : gamma.a.components()) w.frame_.set(with_last(idx, ch.dim()), e);
  }
  return w;
}

AtiyahForm AtiyahForm::section(const Chart& ch, const Expr& lambda) {
  AtiyahForm w(ch, 0);
  w.frame_.set({}, lambda);
  return w;
}

AtiyahForm AtiyahForm::from_jet(const JetSection& psi) {
  const Chart& ch = psi.chart();
  Alternating a(ch.dim() + 1, 1);
  auto v = psi.frame();
  for (int i = 0; i <= ch.dim(); ++i) a.set({i}, v[u(i)]);
  return AtiyahForm(ch, a);
}

Form AtiyahForm::beta() const {
  int n = chart_.dim(), k = degree();
  Form b(chart_, std::min(k, n));
  if (k > n) return b;
  for (const auto& [idx, e] : frame_.components())
    if (idx.empty() || idx.back() != n) b.set(idx, e);
  return b;
}

Form AtiyahForm::gamma() const {
  int n = chart_.dim(), k = degree();
  if (k == 0) throw DegreeError("gamma of a degree-0 Atiyah form");
  Form g(chart_, k - 1);
  for (const auto& [idx, e] : frame_.components())
    if (idx.back() == n) g.set(Index(idx.begin(), idx.end() - 1), e);
  return g;
}

Expr AtiyahForm::scalar() const { return degree() == 0 ? frame_.get({}) : Expr(); }

JetSection AtiyahForm::as_jet() const {
  if (degree() != 1) throw DegreeError("as_jet needs an Atiyah 1-form");
  std::vector<Expr> v(u(chart_.dim() + 1));
  for (const auto& [idx, e] : frame_.components()) v[u(idx[0])] = e;
  return JetSection::from_frame(chart_, v);
}

AtiyahForm operator+(const AtiyahForm& a, const AtiyahForm& b) {
  require_same_chart(a.chart_, b.chart_, "Atiyah form sum");
  return AtiyahForm(a.chart_, a.frame_ + b.frame_);
}

AtiyahForm operator-(const AtiyahForm& a, const AtiyahForm& b) {
  require_same_chart(a.chart_, b.chart_, "Atiyah form difference");
  return AtiyahForm(a.chart_, a.frame_ - b.frame_);
}

Expr evaluate(const AtiyahForm& w, const std::vector<Derivation>& ds) {
  std::vector<std::vector<Expr>> vs;
  for (const auto& d : ds) {
    require_same_chart(w.chart(), d.chart(), "Atiyah form evaluation");
    vs.push_back(d.frame());
  }
  return evaluate(w.frame(), vs);
}

AtiyahForm interior(const Derivation& d, const AtiyahForm& w) {
  require_same_chart(w.chart(), d.chart(), "Atiyah interior product");
  return AtiyahForm(w.chart(), interior(d.frame(), w.frame()));
}

AtiyahForm d_D(const AtiyahForm& w) {
  if (w.degree() > w.chart().dim()) return AtiyahForm(w.chart(), w.chart().dim() + 1);
  return AtiyahForm(w.chart(), algebroid_differential(gauge_algebroid(w.chart()), w.frame(), true));
}

AtiyahForm lie_derivative(const Derivation& d, const AtiyahForm& w) {
  AtiyahForm out = w.degree() <= w.chart().dim() ? interior(d, d_D(w)) : AtiyahForm(w.chart(), w.degree());
  if (w.degree() > 0) out = out + d_D(interior(d, w));
  return out;
}

// ---------------------------------------------------------------- Multiderivation

Multiderivation::Multiderivation(Chart ch, int degree) : chart_(std::move(ch)), frame_(chart_.dim() + 1, degree) {}

Multiderivation::Multiderivation(Chart ch, Alternating frame) : chart_(std::move(ch)), frame_(std::move(frame)) {
  if (frame_.dim() != chart_.dim() + 1) throw ShapeMismatch("multiderivation frame has wrong dimension");
}

Multiderivation Multiderivation::from_parts(const Multivector& p, const Multivector& q) {
  require_same_chart(p.chart, q.chart, "multiderivation parts");
  int m = p.degree(), n = p.chart.dim();
  if (m == 0) throw DegreeError("multiderivations have degree >= 1");
  if (q.degree() != m - 1) throw DegreeError("Q must have degree m-1");
  Multiderivation d(p.chart, m);
  for (const auto& [idx, e] : p.a.components()) d.frame_.set(idx, e);
  const bool odd = (m + 1) % 2 != 0;
  for (const auto& [idx, e] : q.a.components()) d.frame_.set(with_last(idx, n), odd ? -e : e);
  return d;
}

Multiderivation Multiderivation::from_derivation(const Derivation& d) {
  Alternating a(d.chart().dim() + 1, 1);
  auto v = d.frame();
  for (std::size_t i = 0; i < v.size(); ++i) a.set({static_cast<int>(i)}, v[i]);
  return Multiderivation(d.chart(), a);
}

Multivector Multiderivation::P() const {
  int n = chart_.dim(), m = degree();
  Multivector p(chart_, std::min(m, n));
  if (m > n) return p;
  for (const auto& [idx, e] : frame_.components())
    if (idx.empty() || idx.back() != n) p.set(idx, e);
  return p;
}

Multivector Multiderivation::Q() const {
  int n = chart_.dim(), m = degree();
  if (m == 0) throw DegreeError("Q of a degree-0 multiderivation");
  Multivector q(chart_, m - 1);
  const bool odd = (m + 1) % 2 != 0;
  for (const auto& [idx, e] : frame_.components())
    if (idx.back() == n) q.set(Index(idx.begin(), idx.end() - 1), odd ? -e : e);
  return q;
}

Derivation Multiderivation::as_derivation() const {
  if (degree() != 1) throw DegreeError("as_derivation needs degree 1");
  std::vector<Expr> v(u(chart_.dim() + 1));
  for (const auto& [idx, e] : frame_.components()) v[u(idx[0])] = e;
  return Derivation::from_frame(chart_, v);
}

Multiderivation operator+(const Multiderivation& a, const Multiderivation& b) {
  require_same_chart(a.chart_, b.chart_, "multiderivation sum");
  return Multiderivation(a.chart_, a.frame_ + b.frame_);
}

Multiderivation operator-(const Multiderivation& a, const Multiderivation& b) {
  require_same_chart(a.chart_, b.chart_, "multiderivation difference");
  return Multiderivation(a.chart_, a.frame_ - b.frame_);
}

Expr evaluate(const Multiderivation& d, const std::vector<JetSection>& psis) {
  std::vector<std::vector<Expr>> vs;
  for (const auto& p : psis) {
    require_same_chart(d.chart(), p.chart(), "multiderivation evaluation");
    vs.push_back(p.frame());
  }
  return evaluate(d.frame(), vs);
}

Expr apply_multiderivation(const Multiderivation& d, const std::vector<Expr>& lambdas) {
  if (static_cast<int>(lambdas.size()) != d.degree())
    throw ArityError("multiderivation of degree " + std::to_string(d.degree()) + " given " +
                     std::to_string(lambdas.size()) + " arguments");
  std::vector<JetSection> js;
  for (const auto& l : lambdas) js.push_back(jet(d.chart(), l));
  return evaluate(d, js);
}

Derivation sharp(const Multiderivation& j, const JetSection& psi) {
  if (j.degree() != 2) throw DegreeError("sharp needs a biderivation");
  require_same_chart(j.chart(), psi.chart(), "sharp");
  Alternating a = interior(psi.frame(), j.frame());
  std::vector<Expr> v(u(j.chart().dim() + 1));
  for (const auto& [idx, e] : a.components()) v[u(idx[0])] = e;
  return Derivation::from_frame(j.chart(), v);
}

Multiderivation sj_bracket(const Multiderivation& a, const Multiderivation& b) {
  require_same_chart(a.chart(), b.chart(), "sj_bracket");
  const Chart& ch = a.chart();
  int n = ch.dim(), m1 = a.degree(), m2 = b.degree();
  if (m1 < 1 || m2 < 1) throw DegreeError("sj_bracket needs degrees >= 1");
  int m = m1 + m2 - 1;
  if (m > n + 1)
    throw ArityError("bracket degree " + std::to_string(m) + " exceeds " + std::to_string(n + 1));

  const auto inner_b = shuffles(m2, m);
  const auto inner_a = shuffles(m1, m);
  const bool flip = ((m1 + 1) * (m2 + 1)) % 2 != 0;
  auto compose = [&](const Multiderivation& outer, const Multiderivation& inner, const std::vector<Shuffle>& sh,
                     int k, const std::vector<Expr>& ls) {
    Expr sum;
    for (const auto& s : sh) {
      std::vector<Expr> in, out;
      for (int i = 0; i < k; ++i) in.push_back(ls[u(s.order[u(i)])]);
      out.push_back(apply_multiderivation(inner, in));
      for (int i = k; i < m; ++i) out.push_back(ls[u(s.order[u(i)])]);
      Expr v = apply_multiderivation(outer, out);
      sum += s.sign > 0 ? v : -v;
    }
    return sum;
  };
  // The overall factor (-1)^{(m1-1)(m2-1)} makes the bracket commute with
  // homogenization into the Schouten bracket.
  auto bracket = [&](const std::vector<Expr>& ls) {
    Expr first = compose(a, b, inner_b, m2, ls);
    Expr second = compose(b, a, inner_a, m1, ls);
    return flip ? -(first + second) : first - second;
  };

  std::vector<Expr> xs;
  for (int i = 0; i < n; ++i) xs.push_back(Expr::var(ch.var(i)));

  Alternating out(n + 1, m);
  std::map<Index, Expr> q;
  const bool odd = (m + 1) % 2 != 0;
  for (const auto& j : increasing_tuples(n, m - 1)) {
    std::vector<Expr> ls{Expr(1)};
    for (int i : j) ls.push_back(xs[u(i)]);
    Expr v = bracket(ls);
    if (v.is_zero()) continue;
    q[j] = v;
    out.set(with_last(j, n), odd ? -v : v);
  }
  for (const auto& idx : increasing_tuples(n, m)) {
    std::vector<Expr> ls;
    for (int i : idx) ls.push_back(xs[u(i)]);
    Expr v = bracket(ls);
    for (int a_pos = 0; a_pos < m; ++a_pos) {
      Index rest = idx;
      rest.erase(rest.begin() + a_pos);
      auto it = q.find(rest);
      if (it == q.end()) continue;
      Expr t = xs[u(idx[u(a_pos)])] * it->second;
      v -= a_pos % 2 == 0 ? t : -t;
    }
    out.set(idx, v);
  }
  return Multiderivation(ch, out);
}

// ---------------------------------------------------------------- AtiyahTensor11

AtiyahTensor11::AtiyahTensor11(Chart ch) : chart(std::move(ch)), m(zero_matrix(chart.dim() + 1, chart.dim() + 1)) {}

AtiyahTensor11::AtiyahTensor11(Chart ch, Matrix mat) : chart(std::move(ch)), m(std::move(mat)) {
  if (static_cast<int>(m.size()) != chart.dim() + 1) throw ShapeMismatch("Atiyah (1,1)-tensor has wrong size");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != chart.dim() + 1) throw ShapeMismatch("Atiyah (1,1)-tensor is not square");
}

AtiyahTensor11 AtiyahTensor11::identity(const Chart& ch) { return AtiyahTensor11(ch, identity_matrix(ch.dim() + 1)); }

AtiyahTensor11 AtiyahTensor11::from_tensor(const Tensor11& n, const Expr& on_identity) {
  AtiyahTensor11 t(n.chart);
  for (int i = 0; i < n.dim(); ++i)
    for (int j = 0; j < n.dim(); ++j) t.m[u(i)][u(j)] = n.at(i, j);
  t.m[u(n.dim())][u(n.dim())] = on_identity;
  return t;
}

bool AtiyahTensor11::is_zero() const {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

AtiyahTensor11 compose(const AtiyahTensor11& a, const AtiyahTensor11& b) {
  require_same_chart(a.chart, b.chart, "Atiyah compose");
  return AtiyahTensor11(a.chart, a.m * b.m);
}

Derivation apply(const AtiyahTensor11& t, const Derivation& d) {
  require_same_chart(t.chart, d.chart(), "Atiyah apply");
  auto v = d.frame();
  std::vector<Expr> out(v.size());
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = 0; b < v.size(); ++b)
      if (!t.m[a][b].is_zero() && !v[b].is_zero()) out[a] += t.m[a][b] * v[b];
  return Derivation::from_frame(t.chart, out);
}

JetSection apply_dagger(const AtiyahTensor11& t, const JetSection& psi) {
  require_same_chart(t.chart, psi.chart(), "Atiyah dagger");
  auto v = psi.frame();
  std::vector<Expr> out(v.size());
  for (std::size_t b = 0; b < v.size(); ++b)
    for (std::size_t a = 0; a < v.size(); ++a)
      if (!t.m[a][b].is_zero() && !v[a].is_zero()) out[b] += v[a] * t.m[a][b];
  return JetSection::from_frame(t.chart, out);
}

// ---------------------------------------------------------------- vector-valued 2-forms

AtiyahVectorValued2Form::AtiyahVectorValued2Form(Chart ch)
    : chart(std::move(ch)), out(u(chart.dim() + 1), Alternating(chart.dim() + 1, 2)) {}

Derivation AtiyahVectorValued2Form::value(int a, int b) const {
  std::vector<Expr> v;
  for (const auto& o : out) v.push_back(o.get({a, b}));
  return Derivation::from_frame(chart, v);
}

void AtiyahVectorValued2Form::set(int a, int b, const Derivation& d) {
  auto v = d.frame();
  for (std::size_t c = 0; c < out.size(); ++c) out[c].set({a, b}, v[c]);
}

bool AtiyahVectorValued2Form::is_zero() const {
  for (const auto& o : out)
    if (!o.is_zero()) return false;
  return true;
}

std::vector<Expr> AtiyahVectorValued2Form::residuals() const {
  std::vector<Expr> r;
  for (const auto& o : out)
    for (const auto& [idx, e] : o.components()) r.push_back(e);
  return r;
}

AtiyahVectorValued2Form operator*(const Expr& f, const AtiyahVectorValued2Form& x) {
  AtiyahVectorValued2Form y = x;
  for (auto& o : y.out) o = f * o;
  return y;
}

AtiyahVectorValued2Form fnd_bracket(const AtiyahTensor11& uu, const AtiyahTensor11& vv) {
  require_same_chart(uu.chart, vv.chart, "fnd_bracket");
  const Chart& ch = uu.chart;
  int size = ch.dim() + 1;
  AtiyahVectorValued2Form t(ch);
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b) {
      Derivation ea = Derivation::from_frame(ch, unit(size, a)), eb = Derivation::from_frame(ch, unit(size, b));
      Derivation ua = apply(uu, ea), ub = apply(uu, eb), va = apply(vv, ea), vb = apply(vv, eb);
      Derivation val = commutator(ua, vb) + commutator(va, ub) -
                       apply(uu, commutator(va, eb) + commutator(ea, vb)) -
                       apply(vv, commutator(ua, eb) + commutator(ea, ub));
      t.set(a, b, val);
    }
  return t;
}

AtiyahVectorValued2Form atiyah_torsion(const AtiyahTensor11& uu) {
  const Chart& ch = uu.chart;
  int size = ch.dim() + 1;
  AtiyahVectorValued2Form t(ch);
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b) {
      Derivation ea = Derivation::from_frame(ch, unit(size, a)), eb = Derivation::from_frame(ch, unit(size, b));
      Derivation ua = apply(uu, ea), ub = apply(uu, eb);
      t.set(a, b, commutator(ua, ub) - apply(uu, commutator(ua, eb) + commutator(ea, ub)));
    }
  return t;
}

// ---------------------------------------------------------------- contractions

AtiyahForm atiyah_contract(const AtiyahTensor11& t, const AtiyahForm& w, int slot) {
  require_same_chart(t.chart, w.chart(), "atiyah_contract");
  auto full = insert_matrix_full(w.frame(), t.m, slot);
  if (!skew_defect(w.frame(), full).empty()) throw NotSkewSymmetric("insertion of the Atiyah tensor is not alternating");
  return AtiyahForm(w.chart(), from_full(w.frame().dim(), w.degree(), full));
}

std::vector<Expr> atiyah_skew_residual(const AtiyahTensor11& t, const Multiderivation& d, int slot) {
  require_same_chart(t.chart, d.chart(), "atiyah_skew_residual");
  return skew_defect(d.frame(), insert_matrix_full(d.frame(), transpose(t.m), slot));
}

Multiderivation atiyah_contract(const AtiyahTensor11& t, const Multiderivation& d, int slot) {
  require_same_chart(t.chart, d.chart(), "atiyah_contract");
  auto full = insert_matrix_full(d.frame(), transpose(t.m), slot);
  if (!skew_defect(d.frame(), full).empty()) throw NotSkewSymmetric("insertion of the Atiyah tensor is not alternating");
  return Multiderivation(d.chart(), from_full(d.frame().dim(), d.degree(), full));
}

std::vector<Expr> residuals(const AtiyahForm& w) {
  std::vector<Expr> r;
  for (const auto& [idx, e] : w.frame().components()) r.push_back(e);
  return r;
}

std::vector<Expr> residuals(const Multiderivation& d) {
  std::vector<Expr> r;
  for (const auto& [idx, e] : d.frame().components()) r.push_back(e);
  return r;
}

std::vector<Expr> residuals(const Derivation& d) {
  std::vector<Expr> r;
  for (const auto& e : d.frame())
    if (!e.is_zero()) r.push_back(e);
  return r;
}

std::vector<Expr> residuals(const JetSection& j) {
  std::vector<Expr> r;
  for (const auto& e : j.frame())
    if (!e.is_zero()) r.push_back(e);
  return r;
}

}  // namespace lbc
