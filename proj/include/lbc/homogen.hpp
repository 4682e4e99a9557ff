#pragma once

// Homogenization: Atiyah objects on (M, R_M) <-> homogeneous tensors on
// M~ = M x R^x, represented as the base chart extended by a last variable r.
//
// With the identity derivation sent to the Euler field Z = r d_r, a frame
// component with covariant slots I and contravariant slots K picks up
//   r^(1 - #{i in I : i = r} - #{k in K : k != r}),
// so that  lambda~ = r lambda,  (X, f)~ = X + f Z,  (alpha, g)~ = r alpha + g dr,
// (beta, gamma)~ = r beta + gamma ^ dr  and  (P, Q)~ = r^(-1) P + dr-part from Q.

#include <string>

#include "lbc/atiyah.hpp"
#include "lbc/report.hpp"
#include "lbc/tensor.hpp"

namespace lbc {

class HomogChart {
 public:
  HomogChart() = default;
  /// Throws ChartMismatch if `r` is already a base variable.
  explicit HomogChart(Chart base, const std::string& r = "r");

  const Chart& base() const { return base_; }
  const Chart& extended() const { return ext_; }
  const std::string& r_name() const { return ext_.var(base_.dim()); }
  int r_index() const { return base_.dim(); }
  Expr r() const { return Expr::var(r_name()); }
  /// Z = r d_r.
  VectorField euler() const;

 private:
  Chart base_;
  Chart ext_;
};

/// Outcome of the two homogeneity conditions for a tensor with m contravariant slots.
struct HomogeneityCertificate {
  std::string kind;
  int m = 0;
  Report report;  // axioms "euler" and "parity"
  bool passed() const { return report.passed(); }
};

Expr homogenize_section(const HomogChart& hc, const Expr& lambda);
VectorField homogenize_derivation(const HomogChart& hc, const Derivation& d);
Form homogenize_jet(const HomogChart& hc, const JetSection& psi);
Form homogenize(const HomogChart& hc, const AtiyahForm& w);
Multivector homogenize(const HomogChart& hc, const Multiderivation& d);
Tensor11 homogenize(const HomogChart& hc, const AtiyahTensor11& u);
VectorValued2Form homogenize(const HomogChart& hc, const AtiyahVectorValued2Form& t);

HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const Expr& f, std::uint64_t seed = 42);
HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const VectorField& x, std::uint64_t seed = 42);
HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const Form& w, std::uint64_t seed = 42);
HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const Multivector& p, std::uint64_t seed = 42);
HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const Tensor11& n, std::uint64_t seed = 42);
HomogeneityCertificate certify_homogeneous(const HomogChart& hc, const VectorValued2Form& t, std::uint64_t seed = 42);

/// Inverses of the maps above; throw NotHomogeneous when the certificate fails.
Expr dehomogenize_section(const HomogChart& hc, const Expr& f);
Derivation dehomogenize_derivation(const HomogChart& hc, const VectorField& x);
JetSection dehomogenize_jet(const HomogChart& hc, const Form& w);
AtiyahForm dehomogenize(const HomogChart& hc, const Form& w);
Multiderivation dehomogenize(const HomogChart& hc, const Multivector& p);
AtiyahTensor11 dehomogenize(const HomogChart& hc, const Tensor11& n);
AtiyahVectorValued2Form dehomogenize(const HomogChart& hc, const VectorValued2Form& t);

struct Poissonization {
  Multivector pi;
  VectorField euler;
};

/// pi~ = homogenization of a biderivation, with {l~, m~}_pi~ = ({l, m}_J)~.
Poissonization poissonize(const HomogChart& hc, const Multiderivation& j);

/// Throws NotContact on even charts or when theta ^ (d theta)^k vanishes identically.
void require_contact(const Form& theta);

/// d_D (theta, 0), homogenized: equals d(r theta). Throws as require_contact.
Form symplectize_contact(const HomogChart& hc, const Form& theta);

/// theta = i_1 omega for a nondegenerate Atiyah 2-form; throws NotNondegenerate.
Form contact_from_symplectic_atiyah(const AtiyahForm& omega);

}  // namespace lbc
