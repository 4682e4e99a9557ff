#pragma once

// Coordinate calculus of vector fields, forms, multivector fields and
// (1,1)-tensors on a single chart.
//
// Conventions:
//   dx^I(d_I) = 1 for increasing I, wedge without factorials;
//   N(d_j) = sum_i N[i][j] d_i;
//   contractions insert into the first slot, so i_{dx}(d_x ^ d_y) = d_y;
//   pi#(alpha) = i_alpha pi, hence <beta, pi#alpha> = pi(alpha, beta).

#include <vector>

#include "lbc/alternating.hpp"
#include "lbc/expr.hpp"

namespace lbc {

using Matrix = std::vector<std::vector<Expr>>;

Matrix zero_matrix(int rows, int cols);
Matrix identity_matrix(int n);
Matrix transpose(const Matrix& m);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Expr& f, const Matrix& a);

void require_same_chart(const Chart& a, const Chart& b, const char* what);

struct VectorField {
  Chart chart;
  std::vector<Expr> c;

  VectorField() = default;
  explicit VectorField(Chart ch);
  VectorField(Chart ch, std::vector<Expr> comps);
  static VectorField coordinate(const Chart& ch, int i);

  int dim() const { return chart.dim(); }
  const Expr& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  Expr& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  bool is_zero() const;

  VectorField operator-() const;
  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Expr& f, const VectorField& v);
  friend bool operator==(const VectorField& a, const VectorField& b);
};

struct Form {
  Chart chart;
  Alternating a;

  Form() = default;
  Form(Chart ch, int degree);
  Form(Chart ch, Alternating arr);
  static Form function(const Chart& ch, const Expr& f);
  static Form coordinate(const Chart& ch, int i);  // dx_i

  int degree() const { return a.degree(); }
  int dim() const { return chart.dim(); }
  Expr get(const Index& idx) const { return a.get(idx); }
  void set(const Index& idx, const Expr& v) { a.set(idx, v); }
  Expr scalar() const { return degree() == 0 ? a.get({}) : Expr(); }
  std::vector<Expr> covector() const;  // degree 1 only
  bool is_zero() const { return a.is_zero(); }

  Form operator-() const { return Form(chart, -a); }
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form x, const Form& y) { return x += y; }
  friend Form operator-(Form x, const Form& y) { return x -= y; }
  friend Form operator*(const Expr& f, const Form& x) { return Form(x.chart, f * x.a); }
  friend bool operator==(const Form& x, const Form& y) { return x.chart == y.chart && x.a == y.a; }
};

struct Multivector {
  Chart chart;
  Alternating a;

  Multivector() = default;
  Multivector(Chart ch, int degree);
  Multivector(Chart ch, Alternating arr);
  static Multivector function(const Chart& ch, const Expr& f);
  static Multivector from_vector(const VectorField& v);

  int degree() const { return a.degree(); }
  int dim() const { return chart.dim(); }
  Expr get(const Index& idx) const { return a.get(idx); }
  void set(const Index& idx, const Expr& v) { a.set(idx, v); }
  VectorField as_vector() const;  // degree 1 only
  Expr scalar() const { return degree() == 0 ? a.get({}) : Expr(); }
  bool is_zero() const { return a.is_zero(); }

  Multivector operator-() const { return Multivector(chart, -a); }
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  friend Multivector operator+(Multivector x, const Multivector& y) { return x += y; }
  friend Multivector operator-(Multivector x, const Multivector& y) { return x -= y; }
  friend Multivector operator*(const Expr& f, const Multivector& x) { return Multivector(x.chart, f * x.a); }
  friend bool operator==(const Multivector& x, const Multivector& y) { return x.chart == y.chart && x.a == y.a; }
};

struct Tensor11 {
  Chart chart;
  Matrix m;

  Tensor11() = default;
  explicit Tensor11(Chart ch);
  Tensor11(Chart ch, Matrix mat);
  static Tensor11 identity(const Chart& ch);

  int dim() const { return chart.dim(); }
  const Expr& at(int i, int j) const { return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  bool is_zero() const;

  Tensor11& operator+=(const Tensor11& o);
  Tensor11& operator-=(const Tensor11& o);
  friend Tensor11 operator+(Tensor11 x, const Tensor11& y) { return x += y; }
  friend Tensor11 operator-(Tensor11 x, const Tensor11& y) { return x -= y; }
  friend Tensor11 operator*(const Expr& f, const Tensor11& x) { return Tensor11(x.chart, f * x.m); }
  friend bool operator==(const Tensor11& x, const Tensor11& y) { return x.chart == y.chart && x.m == y.m; }
};

Tensor11 transpose(const Tensor11& n);
Tensor11 compose(const Tensor11& a, const Tensor11& b);  // a after b
VectorField apply(const Tensor11& n, const VectorField& x);
/// (N* alpha)(X) = alpha(N X).
Form dual_apply(const Tensor11& n, const Form& alpha);

/// T(d_a, d_b) = sum_i out[i]_{ab} d_i.
struct VectorValued2Form {
  Chart chart;
  std::vector<Alternating> out;

  VectorValued2Form() = default;
  explicit VectorValued2Form(Chart ch);
  VectorField value(int a, int b) const;
  void set(int a, int b, const VectorField& v);
  bool is_zero() const;
  std::vector<Expr> residuals() const;

  VectorValued2Form& operator-=(const VectorValued2Form& o);
  friend VectorValued2Form operator-(VectorValued2Form x, const VectorValued2Form& y) { return x -= y; }
  friend VectorValued2Form operator*(const Expr& f, const VectorValued2Form& x);
  friend bool operator==(const VectorValued2Form& x, const VectorValued2Form& y) {
    return x.chart == y.chart && x.out == y.out;
  }
};

struct SmoothMap {
  Chart source;
  Chart target;
  std::vector<Expr> c;  // in source variables, one per target variable

  SmoothMap() = default;
  SmoothMap(Chart src, Chart tgt, std::vector<Expr> comps);
  static SmoothMap identity(const Chart& ch);

  std::map<std::string, Expr> bindings() const;
  Matrix jacobian() const;  // [i][j] = d c_i / d source_j
};

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

// ---- scalar and vector operations

Expr apply(const VectorField& x, const Expr& f);
VectorField lie_bracket(const VectorField& x, const VectorField& y);
Form ext_d(const Chart& ch, const Expr& f);
Form ext_d(const Form& w);

Form wedge(const Form& a, const Form& b);
Multivector wedge(const Multivector& a, const Multivector& b);
Form interior(const VectorField& x, const Form& w);
Multivector interior_form(const Form& alpha, const Multivector& p);
Expr evaluate(const Form& w, const std::vector<VectorField>& xs);
Expr evaluate(const Multivector& p, const std::vector<Form>& alphas);

Expr lie_derivative(const VectorField& x, const Expr& f);
VectorField lie_derivative(const VectorField& x, const VectorField& y);
Form lie_derivative(const VectorField& x, const Form& w);
Multivector lie_derivative(const VectorField& x, const Multivector& p);
Tensor11 lie_derivative(const VectorField& x, const Tensor11& n);

Multivector schouten(const Multivector& p, const Multivector& q);

VectorValued2Form fn_bracket(const Tensor11& u, const Tensor11& v);
VectorValued2Form nijenhuis_torsion(const Tensor11& n);

Expr pullback_fn(const SmoothMap& phi, const Expr& f);
Form pullback(const SmoothMap& phi, const Form& w);

/// Inserts N into the given slot (forms) or N* into it (multivectors).
/// Throws NotSkewSymmetric when the result is not alternating.
Form contract11(const Tensor11& n, const Form& w, int slot = 0);
Multivector contract11(const Tensor11& n, const Multivector& p, int slot = 0);
/// Symmetric-part residuals of the insertion; all zero iff it is alternating.
std::vector<Expr> skew_residual(const Tensor11& n, const Form& w, int slot = 0);
std::vector<Expr> skew_residual(const Tensor11& n, const Multivector& p, int slot = 0);

VectorField sharp(const Multivector& pi, const Form& alpha);
Form koszul_bracket(const Multivector& pi, const Form& alpha, const Form& beta);

// ---- component access used by checks and substitutions

std::vector<Expr> residuals(const VectorField& v);
std::vector<Expr> residuals(const Form& w);
std::vector<Expr> residuals(const Multivector& p);
std::vector<Expr> residuals(const Tensor11& n);

/// Substitutes into every component and moves the result onto chart `to`.
VectorField substitute(const VectorField& v, const std::map<std::string, Expr>& b, const Chart& to);
Form substitute(const Form& w, const std::map<std::string, Expr>& b, const Chart& to);
Multivector substitute(const Multivector& p, const std::map<std::string, Expr>& b, const Chart& to);
Tensor11 substitute(const Tensor11& n, const std::map<std::string, Expr>& b, const Chart& to);

std::string to_string(const VectorField& v);
std::string to_string(const Form& w);
std::string to_string(const Multivector& p);

}  // namespace lbc
