#pragma once

// Calculus on the trivial line bundle L = R_M over a chart.
//
// Derivations are expanded in the frame {d_1, .., d_n, 1} (the identity
// derivation has frame index n); jets in the dual frame {(dx_i, 0), (0, 1)}.
// Atiyah forms and multiderivations are stored through these frame views:
//
//   AtiyahForm (beta, gamma):    comp(I) = beta_I,  comp(J + {n}) = gamma_J
//   Multiderivation (P, Q):      comp(I) = P^I,     comp(J + {n}) = (-1)^{m+1} Q^J
//
// which reproduces
//   w(D_1..D_k) = beta(X_1..X_k) + sum_i (-1)^{k-i} f_i gamma(.., X_i omitted, ..)
//   {l_1..l_m}  = P(dl_1..dl_m) + sum_i (-1)^{i+1} l_i Q(.., dl_i omitted, ..).

#include <vector>

#include "lbc/alternating.hpp"
#include "lbc/tensor.hpp"

namespace lbc {

/// D l = X(l) + f l.
struct Derivation {
  VectorField X;
  Expr f;

  Derivation() = default;
  Derivation(VectorField x, Expr fn) : X(std::move(x)), f(std::move(fn)) {}
  static Derivation identity(const Chart& ch);
  static Derivation coordinate(const Chart& ch, int i);
  static Derivation from_frame(const Chart& ch, const std::vector<Expr>& v);

  const Chart& chart() const { return X.chart; }
  std::vector<Expr> frame() const;
  Expr operator()(const Expr& lambda) const;
  bool is_zero() const { return X.is_zero() && f.is_zero(); }

  friend Derivation operator+(const Derivation& a, const Derivation& b) { return {a.X + b.X, a.f + b.f}; }
  friend Derivation operator-(const Derivation& a, const Derivation& b) { return {a.X - b.X, a.f - b.f}; }
  friend Derivation operator*(const Expr& g, const Derivation& a) { return {g * a.X, g * a.f}; }
  friend bool operator==(const Derivation& a, const Derivation& b) { return a.X == b.X && a.f == b.f; }
};

/// [(X,f),(Y,g)] = ([X,Y], X(g) - Y(f)).
Derivation commutator(const Derivation& a, const Derivation& b);

/// Pairs with derivations by <(alpha,g),(X,f)> = alpha(X) + g f.
struct JetSection {
  Form alpha;
  Expr g;

  JetSection() = default;
  JetSection(Form a, Expr gg);
  static JetSection from_frame(const Chart& ch, const std::vector<Expr>& v);

  const Chart& chart() const { return alpha.chart; }
  std::vector<Expr> frame() const;

  friend bool operator==(const JetSection& a, const JetSection& b) { return a.alpha == b.alpha && a.g == b.g; }
};

/// j1(l) = (dl, l).
JetSection jet(const Chart& ch, const Expr& lambda);
Expr pair(const JetSection& psi, const Derivation& d);

class AtiyahForm {
 public:
  AtiyahForm() = default;
  AtiyahForm(Chart ch, int degree);
  AtiyahForm(Chart ch, Alternating frame);
  /// A gamma without a chart (default-constructed) stands for zero.
  static AtiyahForm from_parts(const Form& beta, const Form& gamma = Form());
  static AtiyahForm section(const Chart& ch, const Expr& lambda);
  static AtiyahForm from_jet(const JetSection& psi);

  const Chart& chart() const { return chart_; }
  int degree() const { return frame_.degree(); }
  const Alternating& frame() const { return frame_; }
  Alternating& frame() { return frame_; }
  Form beta() const;   // zero of degree min(k, n) when k = n+1
  Form gamma() const;  // degree k-1; requires k >= 1
  Expr scalar() const;
  JetSection as_jet() const;
  bool is_zero() const { return frame_.is_zero(); }

  AtiyahForm operator-() const { return AtiyahForm(chart_, -frame_); }
  friend AtiyahForm operator+(const AtiyahForm& a, const AtiyahForm& b);
  friend AtiyahForm operator-(const AtiyahForm& a, const AtiyahForm& b);
  friend AtiyahForm operator*(const Expr& f, const AtiyahForm& a) { return AtiyahForm(a.chart_, f * a.frame_); }
  friend bool operator==(const AtiyahForm& a, const AtiyahForm& b) { return a.chart_ == b.chart_ && a.frame_ == b.frame_; }

 private:
  Chart chart_;
  Alternating frame_;
};

Expr evaluate(const AtiyahForm& w, const std::vector<Derivation>& ds);
AtiyahForm interior(const Derivation& d, const AtiyahForm& w);
/// Differential of the gauge algebroid with tautological coefficients.
AtiyahForm d_D(const AtiyahForm& w);
/// L_D = i_D d_D + d_D i_D.
AtiyahForm lie_derivative(const Derivation& d, const AtiyahForm& w);

class Multiderivation {
 public:
  Multiderivation() = default;
  Multiderivation(Chart ch, int degree);
  Multiderivation(Chart ch, Alternating frame);
  static Multiderivation from_parts(const Multivector& p, const Multivector& q);
  static Multiderivation from_derivation(const Derivation& d);

  const Chart& chart() const { return chart_; }
  int degree() const { return frame_.degree(); }
  const Alternating& frame() const { return frame_; }
  Alternating& frame() { return frame_; }
  Multivector P() const;
  Multivector Q() const;  // requires m >= 1
  Derivation as_derivation() const;
  bool is_zero() const { return frame_.is_zero(); }

  Multiderivation operator-() const { return Multiderivation(chart_, -frame_); }
  friend Multiderivation operator+(const Multiderivation& a, const Multiderivation& b);
  friend Multiderivation operator-(const Multiderivation& a, const Multiderivation& b);
  friend Multiderivation operator*(const Expr& f, const Multiderivation& a) {
    return Multiderivation(a.chart_, f * a.frame_);
  }
  friend bool operator==(const Multiderivation& a, const Multiderivation& b) {
    return a.chart_ == b.chart_ && a.frame_ == b.frame_;
  }

 private:
  Chart chart_;
  Alternating frame_;
};

Expr evaluate(const Multiderivation& d, const std::vector<JetSection>& psis);
/// {l_1, .., l_m} = D(j1 l_1, .., j1 l_m).
Expr apply_multiderivation(const Multiderivation& d, const std::vector<Expr>& lambdas);
/// J#(psi) = i_psi J, a derivation for m = 2.
Derivation sharp(const Multiderivation& j, const JetSection& psi);
/// Gerstenhaber bracket, reconstructed from evaluations on coordinate sections.
/// Normalized so that homogenization maps it to the Schouten bracket; for
/// biderivations [J,J]{f,g,h} = 2({f,{g,h}} + cyclic).
Multiderivation sj_bracket(const Multiderivation& a, const Multiderivation& b);

/// Endomorphism of the derivation module; U(e_b) = sum_a m[a][b] e_a.
struct AtiyahTensor11 {
  Chart chart;
  Matrix m;

  AtiyahTensor11() = default;
  explicit AtiyahTensor11(Chart ch);
  AtiyahTensor11(Chart ch, Matrix mat);
  static AtiyahTensor11 identity(const Chart& ch);
  /// N on the symbols, zero on the identity derivation row and column.
  static AtiyahTensor11 from_tensor(const Tensor11& n, const Expr& on_identity = Expr());

  int size() const { return chart.dim() + 1; }
  const Expr& at(int a, int b) const { return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  bool is_zero() const;

  friend AtiyahTensor11 operator*(const Expr& f, const AtiyahTensor11& u) { return AtiyahTensor11(u.chart, f * u.m); }
  friend AtiyahTensor11 operator+(const AtiyahTensor11& a, const AtiyahTensor11& b) {
    return AtiyahTensor11(a.chart, a.m + b.m);
  }
  friend bool operator==(const AtiyahTensor11& a, const AtiyahTensor11& b) { return a.chart == b.chart && a.m == b.m; }
};

AtiyahTensor11 compose(const AtiyahTensor11& a, const AtiyahTensor11& b);
Derivation apply(const AtiyahTensor11& u, const Derivation& d);
/// <U# psi, D> = <psi, U D>.
JetSection apply_dagger(const AtiyahTensor11& u, const JetSection& psi);

/// T(e_a, e_b) = sum_c out[c]_{ab} e_c over the derivation frame.
struct AtiyahVectorValued2Form {
  Chart chart;
  std::vector<Alternating> out;

  AtiyahVectorValued2Form() = default;
  explicit AtiyahVectorValued2Form(Chart ch);
  Derivation value(int a, int b) const;
  void set(int a, int b, const Derivation& d);
  bool is_zero() const;
  std::vector<Expr> residuals() const;

  friend AtiyahVectorValued2Form operator*(const Expr& f, const AtiyahVectorValued2Form& x);
  friend bool operator==(const AtiyahVectorValued2Form& x, const AtiyahVectorValued2Form& y) {
    return x.chart == y.chart && x.out == y.out;
  }
};

AtiyahVectorValued2Form fnd_bracket(const AtiyahTensor11& u, const AtiyahTensor11& v);
AtiyahVectorValued2Form atiyah_torsion(const AtiyahTensor11& u);

/// Inserts T into a slot of a form, or T# into a slot of a multiderivation.
/// Throws NotSkewSymmetric when the result is not alternating.
AtiyahForm atiyah_contract(const AtiyahTensor11& t, const AtiyahForm& w, int slot = 0);
Multiderivation atiyah_contract(const AtiyahTensor11& t, const Multiderivation& d, int slot = 0);
std::vector<Expr> atiyah_skew_residual(const AtiyahTensor11& t, const Multiderivation& d, int slot = 0);

std::vector<Expr> residuals(const AtiyahForm& w);
std::vector<Expr> residuals(const Multiderivation& d);
std::vector<Expr> residuals(const Derivation& d);
std::vector<Expr> residuals(const JetSection& j);

}  // namespace lbc
