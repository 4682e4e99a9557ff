#pragma once

// Exact scalar expressions: Laurent polynomials with rational coefficients
// over variables and opaque sin/cos/exp atoms.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lbc {

using Rational = mpq_class;

/// A coordinate chart: a name and an ordered list of distinct variables.
class Chart {
 public:
  Chart() = default;
  Chart(std::string name, std::vector<std::string> vars);

  const std::string& name() const;
  const std::vector<std::string>& vars() const;
  int dim() const { return static_cast<int>(vars().size()); }
  const std::string& var(int i) const { return vars()[static_cast<std::size_t>(i)]; }
  std::optional<int> index_of(std::string_view var) const;
  bool has(std::string_view var) const { return index_of(var).has_value(); }

  friend bool operator==(const Chart& a, const Chart& b);

 private:
  struct Data {
    std::string name;
    std::vector<std::string> vars;
  };
  std::shared_ptr<const Data> data_;
};

class Expr;

namespace detail {
struct Term;
using Poly = std::vector<Term>;
using PolyPtr = std::shared_ptr<const Poly>;
}  // namespace detail

enum class PrimKind : std::uint8_t { Sin = 1, Cos = 2, Exp = 3 };

/// Atomic factor of a monomial: a variable or a transcendental primitive whose
/// argument is itself a canonical expression.
struct Atom {
  enum class Kind : std::uint8_t { Var = 0, Sin = 1, Cos = 2, Exp = 3 };
  Kind kind = Kind::Var;
  std::string name;
  detail::PolyPtr arg;
};

using Monomial = std::vector<std::pair<Atom, int>>;

namespace detail {
struct Term {
  Monomial mono;
  Rational coef;
};
}  // namespace detail

/// Immutable expression held in canonical form.
///
/// Every constructor and operator normalizes eagerly: the representation is a
/// sorted list of Laurent monomials with nonzero rational coefficients, and
/// transcendental atoms enter as opaque symbols. On the Prim-free fragment two
/// expressions are equal iff they are structurally equal.
class Expr {
 public:
  /// Shape of the canonical form, as a read-only view.
  enum class Kind { Const, Var, Sum, Product, IntPow, Prim };

  Expr() = default;
  Expr(long v);  // NOLINT(google-explicit-constructor)
  Expr(int v) : Expr(static_cast<long>(v)) {}  // NOLINT
  Expr(const Rational& q);  // NOLINT

  static Expr var(const std::string& name);
  static Expr prim(PrimKind kind, const Expr& arg);
  static Expr from_poly(detail::Poly terms);

  Kind kind() const;
  bool is_zero() const { return !p_ || p_->empty(); }
  bool is_constant() const;
  bool is_monomial() const;
  Rational constant_value() const;  // only meaningful when is_constant()
  bool has_prims() const;
  std::set<std::string> variables() const;
  const detail::Poly& terms() const;
  std::size_t term_count() const { return p_ ? p_->size() : 0; }

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }
  friend bool operator<(const Expr& a, const Expr& b);

  const detail::PolyPtr& poly_ptr() const { return p_; }

 private:
  explicit Expr(detail::PolyPtr p) : p_(std::move(p)) {}
  detail::PolyPtr p_;
};

Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr exp(const Expr& e);

/// Rebuilds the canonical form; idempotent.
Expr normalize(const Expr& e);
Expr differentiate(const Expr& e, const std::string& var);
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);
double eval(const Expr& e, const std::map<std::string, double>& point);
std::string to_string(const Expr& e);

int compare(const Expr& a, const Expr& b);
int compare(const Atom& a, const Atom& b);

/// Result of the three-valued zero test.
struct ZeroVerdict {
  enum class Kind { Zero, NonZero, Unknown };
  Kind kind = Kind::Zero;
  std::map<std::string, double> witness;
  double value = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;

  bool zero() const { return kind == Kind::Zero; }
  bool nonzero() const { return kind == Kind::NonZero; }
  bool unknown() const { return kind == Kind::Unknown; }
};

struct SamplerOptions {
  int samples = 20;
  double threshold = 1e-7;
};

/// Zero iff the canonical form is zero. Otherwise samples at seeded points in
/// [-2,-0.1] u [0.1,2]: NonZero with a witness if any |value| exceeds the
/// threshold (always NonZero on the Prim-free fragment), Unknown otherwise.
ZeroVerdict is_zero(const Expr& e, std::uint64_t seed, SamplerOptions opts = {});

const char* to_string(ZeroVerdict::Kind k);

}  // namespace lbc
