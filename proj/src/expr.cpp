#include "lbc/expr.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lbc/errors.hpp"

namespace lbc {

// ---------------------------------------------------------------- Chart

Chart::Chart(std::string name, std::vector<std::string> vars) {
  if (vars.empty()) throw ShapeMismatch("chart '" + name + "' has no variables");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw ShapeMismatch("chart '" + name + "' repeats variable '" + vars[i] + "'");
  data_ = std::make_shared<const Data>(Data{std::move(name), std::move(vars)});
}

const std::string& Chart::name() const {
  static const std::string empty;
  return data_ ? data_->name : empty;
}

const std::vector<std::string>& Chart::vars() const {
  static const std::vector<std::string> empty;
  return data_ ? data_->vars : empty;
}

std::optional<int> Chart::index_of(std::string_view var) const {
  const auto& vs = vars();
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i] == var) return static_cast<int>(i);
  return std::nullopt;
}

bool operator==(const Chart& a, const Chart& b) {
  if (a.data_ == b.data_) return true;
  return a.vars() == b.vars();
}

// ---------------------------------------------------------------- ordering

namespace {

using detail::Poly;
using detail::PolyPtr;
using detail::Term;

int compare_poly(const Poly* a, const Poly* b);

int compare_atom(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.kind == Atom::Kind::Var) return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
  return compare_poly(a.arg.get(), b.arg.get());
}

int compare_mono(const Monomial& a, const Monomial& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_atom(a[i].first, b[i].first);
    if (c != 0) return c;
    if (a[i].second != b[i].second) return a[i].second > b[i].second ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

int compare_poly(const Poly* a, const Poly* b) {
  std::size_t na = a ? a->size() : 0;
  std::size_t nb = b ? b->size() : 0;
  std::size_t n = std::min(na, nb);
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_mono((*a)[i].mono, (*b)[i].mono);
    if (c != 0) return c;
    int q = cmp((*a)[i].coef, (*b)[i].coef);
    if (q != 0) return q < 0 ? -1 : 1;
  }
  if (na == nb) return 0;
  return na < nb ? -1 : 1;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_atom(a[i].first, b[j].first);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

// Sorts terms, merges equal monomials, drops zero coefficients.
PolyPtr canonicalize(Poly terms) {
  for (auto& t : terms) {
    std::sort(t.mono.begin(), t.mono.end(),
              [](const auto& x, const auto& y) { return compare_atom(x.first, y.first) < 0; });
    Monomial merged;
    for (auto& f : t.mono) {
      if (!merged.empty() && compare_atom(merged.back().first, f.first) == 0)
        merged.back().second += f.second;
      else
        merged.push_back(std::move(f));
      if (merged.back().second == 0) merged.pop_back();
    }
    t.mono = std::move(merged);
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return compare_mono(x.mono, y.mono) < 0; });
  Poly out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && compare_mono(out.back().mono, t.mono) == 0) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
  if (out.empty()) return nullptr;
  return std::make_shared<const Poly>(std::move(out));
}

PolyPtr add_polys(const Poly* a, const Poly* b, bool negate_b) {
  Poly out;
  std::size_t na = a ? a->size() : 0, nb = b ? b->size() : 0;
  out.reserve(na + nb);
  std::size_t i = 0, j = 0;
  auto push_b = [&](const Term& t) {
    Term c = t;
    if (negate_b) c.coef = -c.coef;
    out.push_back(std::move(c));
  };
  while (i < na && j < nb) {
    int c = compare_mono((*a)[i].mono, (*b)[j].mono);
    if (c < 0) {
      out.push_back((*a)[i++]);
    } else if (c > 0) {
      push_b((*b)[j++]);
    } else {
      Rational s = negate_b ? Rational((*a)[i].coef - (*b)[j].coef) : Rational((*a)[i].coef + (*b)[j].coef);
      if (sgn(s) != 0) out.push_back(Term{(*a)[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < na; ++i) out.push_back((*a)[i]);
  for (; j < nb; ++j) push_b((*b)[j]);
  if (out.empty()) return nullptr;
  return std::make_shared<const Poly>(std::move(out));
}

Expr atom_expr(const Atom& a, int exponent = 1) {
  Poly p;
  p.push_back(Term{Monomial{{a, exponent}}, Rational(1)});
  return Expr::from_poly(std::move(p));
}

Expr monomial_expr(const Monomial& m, const Rational& c) {
  Poly p;
  p.push_back(Term{m, c});
  return Expr::from_poly(std::move(p));
}

PrimKind prim_kind(Atom::Kind k) { return static_cast<PrimKind>(static_cast<std::uint8_t>(k)); }

const char* prim_name(Atom::Kind k) {
  switch (k) {
    case Atom::Kind::Sin: return "sin";
    case Atom::Kind::Cos: return "cos";
    case Atom::Kind::Exp: return "exp";
    default: return "?";
  }
}

Expr arg_expr(const Atom& a) { return Expr::from_poly(a.arg ? *a.arg : Poly{}); }

}  // namespace

// ---------------------------------------------------------------- Expr

Expr::Expr(long v) {
  if (v != 0) p_ = std::make_shared<const Poly>(Poly{Term{{}, Rational(v)}});
}

Expr::Expr(const Rational& q) {
  if (sgn(q) != 0) p_ = std::make_shared<const Poly>(Poly{Term{{}, q}});
}

Expr Expr::var(const std::string& name) {
  Atom a;
  a.kind = Atom::Kind::Var;
  a.name = name;
  return atom_expr(a);
}

Expr Expr::prim(PrimKind kind, const Expr& arg) {
  if (arg.is_zero()) return kind == PrimKind::Sin ? Expr(0) : Expr(1);
  Atom a;
  a.kind = static_cast<Atom::Kind>(static_cast<std::uint8_t>(kind));
  a.arg = arg.p_;
  return atom_expr(a);
}

Expr Expr::from_poly(detail::Poly terms) { return Expr(canonicalize(std::move(terms))); }

Expr::Kind Expr::kind() const {
  if (!p_ || p_->empty()) return Kind::Const;
  if (p_->size() > 1) return Kind::Sum;
  const Term& t = p_->front();
  if (t.mono.empty()) return Kind::Const;
  if (t.mono.size() > 1 || t.coef != 1) return Kind::Product;
  if (t.mono[0].second != 1) return Kind::IntPow;
  return t.mono[0].first.kind == Atom::Kind::Var ? Kind::Var : Kind::Prim;
}

bool Expr::is_constant() const { return !p_ || (p_->size() == 1 && p_->front().mono.empty()); }

bool Expr::is_monomial() const { return !p_ || p_->size() == 1; }

Rational Expr::constant_value() const {
  if (!p_) return Rational(0);
  for (const auto& t : *p_)
    if (t.mono.empty()) return t.coef;
  return Rational(0);
}

bool Expr::has_prims() const {
  if (!p_) return false;
  for (const auto& t : *p_)
    for (const auto& [a, e] : t.mono)
      if (a.kind != Atom::Kind::Var) return true;
  return false;
}

namespace {
void collect_vars(const Poly* p, std::set<std::string>& out) {
  if (!p) return;
  for (const auto& t : *p)
    for (const auto& [a, e] : t.mono) {
      if (a.kind == Atom::Kind::Var)
        out.insert(a.name);
      else
        collect_vars(a.arg.get(), out);
    }
}
}  // namespace

std::set<std::string> Expr::variables() const {
  std::set<std::string> out;
  collect_vars(p_.get(), out);
  return out;
}

const detail::Poly& Expr::terms() const {
  static const detail::Poly empty;
  return p_ ? *p_ : empty;
}

Expr Expr::operator-() const {
  if (!p_) return *this;
  Poly out = *p_;
  for (auto& t : out) t.coef = -t.coef;
  return Expr(std::make_shared<const Poly>(std::move(out)));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Expr(add_polys(a.p_.get(), b.p_.get(), false));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return Expr(add_polys(a.p_.get(), b.p_.get(), true));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  Poly out;
  out.reserve(a.p_->size() * b.p_->size());
  for (const auto& x : *a.p_)
    for (const auto& y : *b.p_) out.push_back(Term{mono_mul(x.mono, y.mono), x.coef * y.coef});
  return Expr(canonicalize(std::move(out)));
}

Expr& Expr::operator+=(const Expr& o) { return *this = *this + o; }
Expr& Expr::operator-=(const Expr& o) { return *this = *this - o; }
Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.p_ == b.p_) return true;
  return compare_poly(a.p_.get(), b.p_.get()) == 0;
}

bool operator<(const Expr& a, const Expr& b) { return compare_poly(a.p_.get(), b.p_.get()) < 0; }

int compare(const Atom& a, const Atom& b) { return compare_atom(a, b); }

int compare(const Expr& a, const Expr& b) { return compare_poly(a.poly_ptr().get(), b.poly_ptr().get()); }

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent > 0) {
    Expr result(1), b = base;
    unsigned e = static_cast<unsigned>(exponent);
    while (e) {
      if (e & 1U) result *= b;
      e >>= 1U;
      if (e) b *= b;
    }
    return result;
  }
  if (base.is_zero()) throw DivisionByZero("negative power of an expression that normalizes to zero");
  if (!base.is_monomial())
    throw NonLaurent("negative power of a non-monomial expression: " + to_string(base));
  const Term& t = base.terms().front();
  Monomial m = t.mono;
  for (auto& [a, e] : m) e *= exponent;
  Rational c;
  mpz_class num = t.coef.get_num(), den = t.coef.get_den();
  mpz_class np, dp;
  unsigned long k = static_cast<unsigned long>(-static_cast<long>(exponent));
  mpz_pow_ui(np.get_mpz_t(), den.get_mpz_t(), k);
  mpz_pow_ui(dp.get_mpz_t(), num.get_mpz_t(), k);
  c = Rational(np, dp);
  c.canonicalize();
  return monomial_expr(m, c);
}

Expr sin(const Expr& e) { return Expr::prim(PrimKind::Sin, e); }
Expr cos(const Expr& e) { return Expr::prim(PrimKind::Cos, e); }
Expr exp(const Expr& e) { return Expr::prim(PrimKind::Exp, e); }

namespace {

Atom renormalized_atom(const Atom& a);

Expr rebuild(const Expr& e) {
  Poly out;
  for (const auto& t : e.terms()) {
    Monomial m;
    for (const auto& [a, k] : t.mono) m.emplace_back(renormalized_atom(a), k);
    std::sort(m.begin(), m.end(), [](const auto& x, const auto& y) { return compare_atom(x.first, y.first) < 0; });
    out.push_back(Term{std::move(m), t.coef});
  }
  return Expr::from_poly(std::move(out));
}

Atom renormalized_atom(const Atom& a) {
  if (a.kind == Atom::Kind::Var) return a;
  Atom b = a;
  b.arg = rebuild(arg_expr(a)).poly_ptr();
  return b;
}

}  // namespace

Expr normalize(const Expr& e) { return rebuild(e); }

namespace {

Expr atom_derivative(const Atom& a, const std::string& v) {
  switch (a.kind) {
    case Atom::Kind::Var: return a.name == v ? Expr(1) : Expr();
    case Atom::Kind::Sin: {
      Expr u = arg_expr(a);
      return cos(u) * differentiate(u, v);
    }
    case Atom::Kind::Cos: {
      Expr u = arg_expr(a);
      return -(sin(u) * differentiate(u, v));
    }
    case Atom::Kind::Exp: {
      Expr u = arg_expr(a);
      return exp(u) * differentiate(u, v);
    }
  }
  return Expr();
}

}  // namespace

Expr differentiate(const Expr& e, const std::string& var) {
  Expr out;
  for (const auto& t : e.terms()) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      const auto& [atom, k] = t.mono[i];
      Expr da = atom_derivative(atom, var);
      if (da.is_zero()) continue;
      Monomial rest = t.mono;
      if (k == 1)
        rest.erase(rest.begin() + static_cast<long>(i));
      else
        rest[i].second = k - 1;
      out += monomial_expr(rest, t.coef * k) * da;
    }
  }
  return out;
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
  Expr out;
  for (const auto& t : e.terms()) {
    Expr term(t.coef);
    for (const auto& [a, k] : t.mono) {
      Expr base;
      if (a.kind == Atom::Kind::Var) {
        auto it = bindings.find(a.name);
        base = it == bindings.end() ? Expr::var(a.name) : it->second;
      } else {
        base = Expr::prim(prim_kind(a.kind), substitute(arg_expr(a), bindings));
      }
      term *= pow(base, k);
    }
    out += term;
  }
  return out;
}

double eval(const Expr& e, const std::map<std::string, double>& point) {
  double sum = 0.0;
  for (const auto& t : e.terms()) {
    double v = t.coef.get_d();
    for (const auto& [a, k] : t.mono) {
      double base = 0.0;
      switch (a.kind) {
        case Atom::Kind::Var: {
          auto it = point.find(a.name);
          if (it == point.end()) throw UnboundVariable("unbound variable '" + a.name + "'");
          base = it->second;
          break;
        }
        case Atom::Kind::Sin: base = std::sin(eval(arg_expr(a), point)); break;
        case Atom::Kind::Cos: base = std::cos(eval(arg_expr(a), point)); break;
        case Atom::Kind::Exp: base = std::exp(eval(arg_expr(a), point)); break;
      }
      if (k < 0 && base == 0.0) throw DivisionByZero("negative power evaluated at zero");
      v *= std::pow(base, k);
    }
    sum += v;
  }
  return sum;
}

namespace {

std::string atom_string(const Atom& a) {
  if (a.kind == Atom::Kind::Var) return a.name;
  return std::string(prim_name(a.kind)) + "(" + to_string(arg_expr(a)) + ")";
}

}  // namespace

std::string to_string(const Expr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : e.terms()) {
    Rational c = t.coef;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = c == 1;
    if (t.mono.empty() || !unit) os << c.get_str();
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (i > 0 || !unit) os << "*";
      os << atom_string(t.mono[i].first);
      if (t.mono[i].second != 1) os << "^" << t.mono[i].second;
    }
  }
  return os.str();
}

const char* to_string(ZeroVerdict::Kind k) {
  switch (k) {
    case ZeroVerdict::Kind::Zero: return "zero";
    case ZeroVerdict::Kind::NonZero: return "nonzero";
    case ZeroVerdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

ZeroVerdict is_zero(const Expr& e, std::uint64_t seed, SamplerOptions opts) {
  ZeroVerdict v;
  v.seed = seed;
  if (e.is_zero()) return v;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::bernoulli_distribution neg(0.5);
  auto vars = e.variables();
  double best = -1.0;
  for (int s = 0; s < opts.samples; ++s) {
    std::map<std::string, double> point;
    for (const auto& name : vars) {
      double x = mag(rng);
      point[name] = neg(rng) ? -x : x;
    }
    double value = eval(e, point);
    ++v.samples;
    if (std::fabs(value) > best) {
      best = std::fabs(value);
      v.witness = point;
      v.value = value;
    }
  }
  // A nonzero canonical form is a proof of nonvanishing when no atom is opaque.
  if (!e.has_prims() || best > opts.threshold)
    v.kind = ZeroVerdict::Kind::NonZero;
  else
    v.kind = ZeroVerdict::Kind::Unknown;
  return v;
}

}  // namespace lbc
