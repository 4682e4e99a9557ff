#include "lbc/tensor.hpp"

#include <functional>
#include <sstream>

#include "lbc/errors.hpp"

namespace lbc {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

void require_degree(int deg, int want, const char* what) {
  if (deg != want) throw DegreeError(std::string(what) + ": expected degree " + std::to_string(want) + ", got " + std::to_string(deg));
}

}  // namespace

// ---------------------------------------------------------------- matrices

Matrix zero_matrix(int rows, int cols) { return Matrix(u(rows), std::vector<Expr>(u(cols))); }

Matrix identity_matrix(int n) {
  Matrix m = zero_matrix(n, n);
  for (int i = 0; i < n; ++i) m[u(i)][u(i)] = Expr(1);
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return m;
  Matrix t = zero_matrix(static_cast<int>(m[0].size()), static_cast<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty()) return {};
  if (a[0].size() != b.size()) throw ShapeMismatch("matrix product shape mismatch");
  Matrix out = zero_matrix(static_cast<int>(a.size()), static_cast<int>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw ShapeMismatch("matrix sum shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw ShapeMismatch("matrix difference shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] -= b[i][j];
  return out;
}

Matrix operator*(const Expr& f, const Matrix& a) {
  Matrix out = a;
  for (auto& row : out)
    for (auto& e : row) e = f * e;
  return out;
}

void require_same_chart(const Chart& a, const Chart& b, const char* what) {
  if (!(a == b)) throw ChartMismatch(std::string(what) + ": charts '" + a.name() + "' and '" + b.name() + "' differ");
}

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(Chart ch) : chart(std::move(ch)), c(u(chart.dim())) {}

VectorField::VectorField(Chart ch, std::vector<Expr> comps) : chart(std::move(ch)), c(std::move(comps)) {
  if (static_cast<int>(c.size()) != chart.dim()) throw ShapeMismatch("vector field component count differs from chart dimension");
}

VectorField VectorField::coordinate(const Chart& ch, int i) {
  VectorField v(ch);
  v[i] = Expr(1);
  return v;
}

bool VectorField::is_zero() const {
  for (const auto& e : c)
    if (!e.is_zero()) return false;
  return true;
}

VectorField VectorField::operator-() const {
  VectorField v = *this;
  for (auto& e : v.c) e = -e;
  return v;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same_chart(chart, o.chart, "vector field sum");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  require_same_chart(chart, o.chart, "vector field difference");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  return *this;
}

VectorField operator*(const Expr& f, const VectorField& v) {
  VectorField out = v;
  for (auto& e : out.c) e = f * e;
  return out;
}

bool operator==(const VectorField& a, const VectorField& b) { return a.chart == b.chart && a.c == b.c; }

// ---------------------------------------------------------------- Form / Multivector

Form::Form(Chart ch, int degree) : chart(std::move(ch)), a(chart.dim(), degree) {}

Form::Form(Chart ch, Alternating arr) : chart(std::move(ch)), a(std::move(arr)) {
  if (a.dim() != chart.dim()) throw ShapeMismatch("form dimension differs from chart");
}

Form Form::function(const Chart& ch, const Expr& f) {
  Form w(ch, 0);
  w.set({}, f);
  return w;
}

Form Form::coordinate(const Chart& ch, int i) {
  Form w(ch, 1);
  w.set({i}, Expr(1));
  return w;
}

std::vector<Expr> Form::covector() const {
  require_degree(degree(), 1, "covector");
  std::vector<Expr> v(u(dim()));
  for (const auto& [idx, e] : a.components()) v[u(idx[0])] = e;
  return v;
}

Form& Form::operator+=(const Form& o) {
  require_same_chart(chart, o.chart, "form sum");
  a += o.a;
  return *this;
}

Form& Form::operator-=(const Form& o) {
  require_same_chart(chart, o.chart, "form difference");
  a -= o.a;
  return *this;
}

Multivector::Multivector(Chart ch, int degree) : chart(std::move(ch)), a(chart.dim(), degree) {}

Multivector::Multivector(Chart ch, Alternating arr) : chart(std::move(ch)), a(std::move(arr)) {
  if (a.dim() != chart.dim()) throw ShapeMismatch("multivector dimension differs from chart");
}

Multivector Multivector::function(const Chart& ch, const Expr& f) {
  Multivector p(ch, 0);
  p.set({}, f);
  return p;
}

Multivector Multivector::from_vector(const VectorField& v) {
  Multivector p(v.chart, 1);
  for (int i = 0; i < v.dim(); ++i) p.set({i}, v[i]);
  return p;
}

VectorField Multivector::as_vector() const {
  require_degree(degree(), 1, "as_vector");
  VectorField v(chart);
  for (const auto& [idx, e] : a.components()) v[idx[0]] = e;
  return v;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  require_same_chart(chart, o.chart, "multivector sum");
  a += o.a;
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  require_same_chart(chart, o.chart, "multivector difference");
  a -= o.a;
  return *this;
}

// ---------------------------------------------------------------- Tensor11

Tensor11::Tensor11(Chart ch) : chart(std::move(ch)), m(zero_matrix(chart.dim(), chart.dim())) {}

Tensor11::Tensor11(Chart ch, Matrix mat) : chart(std::move(ch)), m(std::move(mat)) {
  if (static_cast<int>(m.size()) != chart.dim()) throw ShapeMismatch("(1,1)-tensor matrix has wrong size");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != chart.dim()) throw ShapeMismatch("(1,1)-tensor matrix is not square");
}

Tensor11 Tensor11::identity(const Chart& ch) { return Tensor11(ch, identity_matrix(ch.dim())); }

bool Tensor11::is_zero() const {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

Tensor11& Tensor11::operator+=(const Tensor11& o) {
  require_same_chart(chart, o.chart, "tensor sum");
  m = m + o.m;
  return *this;
}

Tensor11& Tensor11::operator-=(const Tensor11& o) {
  require_same_chart(chart, o.chart, "tensor difference");
  m = m - o.m;
  return *this;
}

Tensor11 transpose(const Tensor11& n) { return Tensor11(n.chart, transpose(n.m)); }

Tensor11 compose(const Tensor11& a, const Tensor11& b) {
  require_same_chart(a.chart, b.chart, "compose");
  return Tensor11(a.chart, a.m * b.m);
}

VectorField apply(const Tensor11& n, const VectorField& x) {
  require_same_chart(n.chart, x.chart, "apply");
  VectorField out(n.chart);
  for (int i = 0; i < n.dim(); ++i)
    for (int j = 0; j < n.dim(); ++j)
      if (!n.at(i, j).is_zero() && !x[j].is_zero()) out[i] += n.at(i, j) * x[j];
  return out;
}

Form dual_apply(const Tensor11& n, const Form& alpha) {
  require_same_chart(n.chart, alpha.chart, "dual_apply");
  require_degree(alpha.degree(), 1, "dual_apply");
  auto a = alpha.covector();
  Form out(n.chart, 1);
  for (int j = 0; j < n.dim(); ++j) {
    Expr s;
    for (int i = 0; i < n.dim(); ++i)
      if (!a[u(i)].is_zero() && !n.at(i, j).is_zero()) s += a[u(i)] * n.at(i, j);
    out.set({j}, s);
  }
  return out;
}

// ---------------------------------------------------------------- VectorValued2Form

VectorValued2Form::VectorValued2Form(Chart ch) : chart(std::move(ch)) {
  int n = chart.dim();
  out.assign(u(n), Alternating(n, n >= 2 ? 2 : n));
}

VectorField VectorValued2Form::value(int a, int b) const {
  VectorField v(chart);
  for (int i = 0; i < chart.dim(); ++i) v[i] = out[u(i)].get({a, b});
  return v;
}

void VectorValued2Form::set(int a, int b, const VectorField& v) {
  for (int i = 0; i < chart.dim(); ++i) out[u(i)].set({a, b}, v[i]);
}

bool VectorValued2Form::is_zero() const {
  for (const auto& o : out)
    if (!o.is_zero()) return false;
  return true;
}

std::vector<Expr> VectorValued2Form::residuals() const {
  std::vector<Expr> r;
  for (const auto& o : out)
    for (const auto& [idx, e] : o.components()) r.push_back(e);
  return r;
}

VectorValued2Form& VectorValued2Form::operator-=(const VectorValued2Form& o) {
  require_same_chart(chart, o.chart, "vector-valued form difference");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= o.out[i];
  return *this;
}

VectorValued2Form operator*(const Expr& f, const VectorValued2Form& x) {
  VectorValued2Form y = x;
  for (auto& o : y.out) o = f * o;
  return y;
}

// ---------------------------------------------------------------- SmoothMap

SmoothMap::SmoothMap(Chart src, Chart tgt, std::vector<Expr> comps)
    : source(std::move(src)), target(std::move(tgt)), c(std::move(comps)) {
  if (static_cast<int>(c.size()) != target.dim()) throw ShapeMismatch("map component count differs from target dimension");
}

SmoothMap SmoothMap::identity(const Chart& ch) {
  std::vector<Expr> comps;
  for (const auto& v : ch.vars()) comps.push_back(Expr::var(v));
  return SmoothMap(ch, ch, comps);
}

std::map<std::string, Expr> SmoothMap::bindings() const {
  std::map<std::string, Expr> b;
  for (int i = 0; i < target.dim(); ++i) b[target.var(i)] = c[u(i)];
  return b;
}

Matrix SmoothMap::jacobian() const {
  Matrix j = zero_matrix(target.dim(), source.dim());
  for (int i = 0; i < target.dim(); ++i)
    for (int k = 0; k < source.dim(); ++k) j[u(i)][u(k)] = differentiate(c[u(i)], source.var(k));
  return j;
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
  require_same_chart(outer.source, inner.target, "compose");
  auto b = inner.bindings();
  std::vector<Expr> comps;
  for (const auto& e : outer.c) comps.push_back(substitute(e, b));
  return SmoothMap(inner.source, outer.target, comps);
}

// ---------------------------------------------------------------- calculus

Expr apply(const VectorField& x, const Expr& f) {
  Expr out;
  for (int i = 0; i < x.dim(); ++i)
    if (!x[i].is_zero()) out += x[i] * differentiate(f, x.chart.var(i));
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart, y.chart, "lie_bracket");
  VectorField out(x.chart);
  for (int i = 0; i < x.dim(); ++i) out[i] = apply(x, y[i]) - apply(y, x[i]);
  return out;
}

Form ext_d(const Chart& ch, const Expr& f) {
  Form w(ch, 1);
  for (int i = 0; i < ch.dim(); ++i) w.set({i}, differentiate(f, ch.var(i)));
  return w;
}

Form ext_d(const Form& w) {
  if (w.degree() >= w.dim()) return Form(w.chart, Alternating(w.dim(), w.dim()));
  Form out(w.chart, w.degree() + 1);
  for (const auto& [idx, e] : w.a.components())
    for (int j = 0; j < w.dim(); ++j) {
      Expr dj = differentiate(e, w.chart.var(j));
      if (dj.is_zero()) continue;
      Index k{j};
      k.insert(k.end(), idx.begin(), idx.end());
      Index s = k;
      if (sort_with_sign(s) == 0) continue;
      out.a.add(k, dj);
    }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  require_same_chart(a.chart, b.chart, "wedge");
  return Form(a.chart, wedge(a.a, b.a));
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  require_same_chart(a.chart, b.chart, "wedge");
  return Multivector(a.chart, wedge(a.a, b.a));
}

Form interior(const VectorField& x, const Form& w) {
  require_same_chart(x.chart, w.chart, "interior");
  return Form(w.chart, interior(x.c, w.a));
}

Multivector interior_form(const Form& alpha, const Multivector& p) {
  require_same_chart(alpha.chart, p.chart, "interior_form");
  require_degree(alpha.degree(), 1, "interior_form");
  return Multivector(p.chart, interior(alpha.covector(), p.a));
}

Expr evaluate(const Form& w, const std::vector<VectorField>& xs) {
  std::vector<std::vector<Expr>> vs;
  for (const auto& x : xs) {
    require_same_chart(x.chart, w.chart, "evaluate");
    vs.push_back(x.c);
  }
  return evaluate(w.a, vs);
}

Expr evaluate(const Multivector& p, const std::vector<Form>& alphas) {
  std::vector<std::vector<Expr>> vs;
  for (const auto& a : alphas) {
    require_same_chart(a.chart, p.chart, "evaluate");
    vs.push_back(a.covector());
  }
  return evaluate(p.a, vs);
}

Expr lie_derivative(const VectorField& x, const Expr& f) { return apply(x, f); }

VectorField lie_derivative(const VectorField& x, const VectorField& y) { return lie_bracket(x, y); }

Form lie_derivative(const VectorField& x, const Form& w) {
  require_same_chart(x.chart, w.chart, "lie_derivative");
  if (w.degree() == 0) return Form::function(w.chart, apply(x, w.scalar()));
  Form out = ext_d(interior(x, w));
  if (w.degree() < w.dim()) out += interior(x, ext_d(w));
  return out;
}

Multivector lie_derivative(const VectorField& x, const Multivector& p) {
  require_same_chart(x.chart, p.chart, "lie_derivative");
  // (L_X P)^I = X(P^I) - sum_s P^{I with i_s -> k} d_k X^{i_s}
  Multivector out(p.chart, p.degree());
  int n = p.dim();
  for (const auto& idx : increasing_tuples(n, p.degree())) {
    Expr v = apply(x, p.get(idx));
    for (std::size_t s = 0; s < idx.size(); ++s)
      for (int k = 0; k < n; ++k) {
        Index j = idx;
        j[s] = k;
        Expr pk = p.get(j);
        if (pk.is_zero()) continue;
        v -= pk * differentiate(x[idx[s]], p.chart.var(k));
      }
    out.set(idx, v);
  }
  return out;
}

Tensor11 lie_derivative(const VectorField& x, const Tensor11& n) {
  require_same_chart(x.chart, n.chart, "lie_derivative");
  int d = n.dim();
  Tensor11 out(n.chart);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Expr v = apply(x, n.at(i, j));
      for (int k = 0; k < d; ++k) {
        if (!n.at(k, j).is_zero()) v -= n.at(k, j) * differentiate(x[i], n.chart.var(k));
        if (!n.at(i, k).is_zero()) v += n.at(i, k) * differentiate(x[k], n.chart.var(j));
      }
      out.m[u(i)][u(j)] = v;
    }
  return out;
}

namespace {

struct Piece {
  Expr coef;
  int index;
};

// [f d_a, g d_b] = f d_a(g) d_b - g d_b(f) d_a
std::vector<Piece> field_bracket(const Chart& ch, const Expr& f, int a, const Expr& g, int b) {
  std::vector<Piece> out;
  Expr x = f * differentiate(g, ch.var(a));
  Expr y = -(g * differentiate(f, ch.var(b)));
  if (!x.is_zero()) out.push_back({x, b});
  if (!y.is_zero()) out.push_back({y, a});
  return out;
}

// [P, g] for a function g: sum_i (-1)^{p-i} X_i(g) X_1 ^ .. ^ X_i^ .. ^ X_p.
Multivector bracket_with_function(const Multivector& p, const Expr& g) {
  int deg = p.degree();
  Multivector out(p.chart, deg - 1);
  for (const auto& [idx, f] : p.a.components())
    for (int i = 0; i < deg; ++i) {
      Expr xi = differentiate(g, p.chart.var(idx[u(i)]));
      if (xi.is_zero()) continue;
      Index rest = idx;
      rest.erase(rest.begin() + i);
      // X_1 carries f; if X_1 itself is removed f multiplies X_1(g).
      Expr term = f * xi;
      int sign = (deg - 1 - i) % 2 == 0 ? 1 : -1;
      out.a.add(rest, sign > 0 ? term : -term);
    }
  return out;
}

}  // namespace

Multivector schouten(const Multivector& p, const Multivector& q) {
  require_same_chart(p.chart, q.chart, "schouten");
  const Chart& ch = p.chart;
  int pd = p.degree(), qd = q.degree();
  int n = ch.dim();
  int rd = pd + qd - 1;
  if (rd < 0) return Multivector(ch, 0);
  if (rd > n) return Multivector(ch, Alternating(n, n));
  if (qd == 0) return bracket_with_function(p, q.scalar());
  if (pd == 0) {
    Multivector r = bracket_with_function(q, p.scalar());
    return qd % 2 == 0 ? r : -r;
  }
  Multivector out(ch, rd);
  for (const auto& [ii, f] : p.a.components())
    for (const auto& [jj, g] : q.a.components())
      for (int i = 0; i < pd; ++i)
        for (int j = 0; j < qd; ++j) {
          std::vector<Piece> pieces;
          Expr cf = i == 0 ? f : Expr(1);
          Expr cg = j == 0 ? g : Expr(1);
          pieces = field_bracket(ch, cf, ii[u(i)], cg, jj[u(j)]);
          if (pieces.empty()) continue;
          Expr rest_coef = (i != 0 ? f : Expr(1)) * (j != 0 ? g : Expr(1));
          int sign = (i + j) % 2 == 0 ? 1 : -1;
          for (const auto& pc : pieces) {
            Index k{pc.index};
            for (int a = 0; a < pd; ++a)
              if (a != i) k.push_back(ii[u(a)]);
            for (int b = 0; b < qd; ++b)
              if (b != j) k.push_back(jj[u(b)]);
            Index s = k;
            if (sort_with_sign(s) == 0) continue;
            Expr term = pc.coef * rest_coef;
            out.a.add(k, sign > 0 ? term : -term);
          }
        }
  return out;
}

VectorValued2Form fn_bracket(const Tensor11& uu, const Tensor11& v) {
  require_same_chart(uu.chart, v.chart, "fn_bracket");
  const Chart& ch = uu.chart;
  VectorValued2Form out(ch);
  int n = ch.dim();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      VectorField xa = VectorField::coordinate(ch, a), xb = VectorField::coordinate(ch, b);
      VectorField ua = apply(uu, xa), ub = apply(uu, xb), va = apply(v, xa), vb = apply(v, xb);
      VectorField t = lie_bracket(ua, vb) + lie_bracket(va, ub);
      t -= apply(uu, lie_bracket(va, xb) + lie_bracket(xa, vb));
      t -= apply(v, lie_bracket(ua, xb) + lie_bracket(xa, ub));
      out.set(a, b, t);
    }
  return out;
}

VectorValued2Form nijenhuis_torsion(const Tensor11& nn) {
  const Chart& ch = nn.chart;
  VectorValued2Form out(ch);
  int n = ch.dim();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      VectorField xa = VectorField::coordinate(ch, a), xb = VectorField::coordinate(ch, b);
      VectorField na = apply(nn, xa), nb = apply(nn, xb);
      VectorField t = lie_bracket(na, nb) - apply(nn, lie_bracket(na, xb) + lie_bracket(xa, nb));
      out.set(a, b, t);
    }
  return out;
}

Expr pullback_fn(const SmoothMap& phi, const Expr& f) { return substitute(f, phi.bindings()); }

Form pullback(const SmoothMap& phi, const Form& w) {
  require_same_chart(phi.target, w.chart, "pullback");
  auto b = phi.bindings();
  std::vector<Form> dphi;
  for (const auto& e : phi.c) dphi.push_back(ext_d(phi.source, e));
  if (w.degree() > phi.source.dim()) return Form(phi.source, Alternating(phi.source.dim(), phi.source.dim()));
  Form out(phi.source, w.degree());
  for (const auto& [idx, e] : w.a.components()) {
    Form term = Form::function(phi.source, substitute(e, b));
    for (int i : idx) term = wedge(term, dphi[u(i)]);
    out += term;
  }
  return out;
}


std::vector<Expr> skew_residual(const Tensor11& n, const Form& w, int slot) {
  require_same_chart(n.chart, w.chart, "skew_residual");
  auto full = insert_matrix_full(w.a, n.m, slot);
  return skew_defect(w.a, full);
}

std::vector<Expr> skew_residual(const Tensor11& n, const Multivector& p, int slot) {
  require_same_chart(n.chart, p.chart, "skew_residual");
  auto full = insert_matrix_full(p.a, transpose(n.m), slot);
  return skew_defect(p.a, full);
}

Form contract11(const Tensor11& n, const Form& w, int slot) {
  require_same_chart(n.chart, w.chart, "contract11");
  auto full = insert_matrix_full(w.a, n.m, slot);
  if (!skew_defect(w.a, full).empty()) throw NotSkewSymmetric("insertion of the (1,1)-tensor is not alternating");
  return Form(w.chart, from_full(w.dim(), w.degree(), full));
}

Multivector contract11(const Tensor11& n, const Multivector& p, int slot) {
  require_same_chart(n.chart, p.chart, "contract11");
  auto full = insert_matrix_full(p.a, transpose(n.m), slot);
  if (!skew_defect(p.a, full).empty()) throw NotSkewSymmetric("insertion of the (1,1)-tensor is not alternating");
  return Multivector(p.chart, from_full(p.dim(), p.degree(), full));
}

VectorField sharp(const Multivector& pi, const Form& alpha) {
  require_degree(pi.degree(), 2, "sharp");
  return interior_form(alpha, pi).as_vector();
}

Form koszul_bracket(const Multivector& pi, const Form& alpha, const Form& beta) {
  Form out = lie_derivative(sharp(pi, alpha), beta) - lie_derivative(sharp(pi, beta), alpha);
  return out - ext_d(pi.chart, evaluate(pi, {alpha, beta}));
}

std::vector<Expr> residuals(const VectorField& v) {
  std::vector<Expr> r;
  for (const auto& e : v.c)
    if (!e.is_zero()) r.push_back(e);
  return r;
}

std::vector<Expr> residuals(const Form& w) {
  std::vector<Expr> r;
  for (const auto& [idx, e] : w.a.components()) r.push_back(e);
  return r;
}

std::vector<Expr> residuals(const Multivector& p) {
  std::vector<Expr> r;
  for (const auto& [idx, e] : p.a.components()) r.push_back(e);
  return r;
}

std::vector<Expr> residuals(const Tensor11& n) {
  std::vector<Expr> r;
  for (const auto& row : n.m)
    for (const auto& e : row)
      if (!e.is_zero()) r.push_back(e);
  return r;
}

VectorField substitute(const VectorField& v, const std::map<std::string, Expr>& b, const Chart& to) {
  VectorField out(to);
  if (to.dim() != v.dim()) throw ShapeMismatch("substitute: target chart dimension differs");
  for (int i = 0; i < v.dim(); ++i) out[i] = substitute(v[i], b);
  return out;
}

Form substitute(const Form& w, const std::map<std::string, Expr>& b, const Chart& to) {
  if (to.dim() != w.dim()) throw ShapeMismatch("substitute: target chart dimension differs");
  return Form(to, w.a.map([&](const Expr& e) { return substitute(e, b); }));
}

Multivector substitute(const Multivector& p, const std::map<std::string, Expr>& b, const Chart& to) {
  if (to.dim() != p.dim()) throw ShapeMismatch("substitute: target chart dimension differs");
  return Multivector(to, p.a.map([&](const Expr& e) { return substitute(e, b); }));
}

Tensor11 substitute(const Tensor11& n, const std::map<std::string, Expr>& b, const Chart& to) {
  if (to.dim() != n.dim()) throw ShapeMismatch("substitute: target chart dimension differs");
  Matrix m = n.m;
  for (auto& row : m)
    for (auto& e : row) e = substitute(e, b);
  return Tensor11(to, m);
}

namespace {

std::string wrap(const Expr& e) {
  std::string s = to_string(e);
  if (e.term_count() > 1) return "(" + s + ")";
  return s;
}

template <class F>
std::string join_components(const Alternating& a, F&& basis) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, e] : a.components()) {
    if (!first) os << " + ";
    first = false;
    os << wrap(e);
    if (!idx.empty()) os << "*" << basis(idx);
  }
  return os.str();
}

}  // namespace

std::string to_string(const VectorField& v) { return to_string(Multivector::from_vector(v)); }

std::string to_string(const Form& w) {
  return join_components(w.a, [&](const Index& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "^d" : "d") + w.chart.var(idx[i]);
    return s;
  });
}

std::string to_string(const Multivector& p) {
  return join_components(p.a, [&](const Index& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "^D" : "D") + p.chart.var(idx[i]);
    return s;
  });
}

}  // namespace lbc
