#pragma once

// Certified verifiers for Poisson, Jacobi and Nijenhuis-type structures, and
// the contact <-> nondegenerate Jacobi inversion.
//
// Identities involving two 1-forms (or jets) are checked on all frame pairs
// and on 5 seeded random pairs with polynomial coefficients.

#include <cstdint>

#include "lbc/atiyah.hpp"
#include "lbc/report.hpp"
#include "lbc/tensor.hpp"

namespace lbc {

using StructureReport = Report;

/// [pi, pi] = 0.
StructureReport verify_poisson(const Multivector& pi, std::uint64_t seed = 42);

/// [J, J] = 0 for the Schouten-Jacobi bracket.
StructureReport verify_jacobi(const Multiderivation& j, std::uint64_t seed = 42);

/// Poisson plus L_zeta pi + pi = 0.
StructureReport verify_homogeneous_poisson(const Multivector& pi, const VectorField& zeta, std::uint64_t seed = 42);

/// pi_N(alpha, beta) = pi(N* alpha, beta); throws NotSkewSymmetric if it is not a bivector.
Multivector pi_n(const Multivector& pi, const Tensor11& n);

/// Axioms "poisson", "nijenhuis", "skewness", "compatibility".
StructureReport verify_pn(const Multivector& pi, const Tensor11& n, std::uint64_t seed = 42);

/// Pi = -Omega^{-1}, so that dx ^ dy corresponds to d_x ^ d_y. Throws DegenerateForm.
Multivector invert_symplectic(const Form& omega);

/// Both sides of the symplectic-Nijenhuis equivalence for pi = omega^{-1}:
///   (1) "closed-omega-N", "closed-omega-N2";
///   (2) "nijenhuis", "compatibility";
/// after the shared hypothesis "skewness", plus "branches-agree".
StructureReport magri_morosi(const Form& omega, const Tensor11& n, std::uint64_t seed = 42);

/// Pass/Fail/Unknown of branch 1 or 2 of a magri_morosi report.
Verdict magri_morosi_branch(const StructureReport& r, int branch);

/// Axioms "jacobi", "nijenhuis", "skewness", "compatibility", "skew-J_N".
StructureReport verify_jn(const Multiderivation& j, const AtiyahTensor11& n, std::uint64_t seed = 42);

/// Pi = pi - i pi_N.
struct HolomorphicBivector {
  Multivector re;
  Multivector im;
};
HolomorphicBivector holomorphic_bivector(const Multivector& pi, const Tensor11& n);

/// verify_pn axioms plus "almost-complex" (N^2 + 1 = 0) and "pi_N-poisson".
/// Throws OddDimension on odd charts.
StructureReport verify_holomorphic_poisson(const Multivector& pi, const Tensor11& n, std::uint64_t seed = 42);

/// Inverse of the frame matrix of d_D(theta, 0), with the sign of invert_symplectic.
/// Throws NotContact.
Multiderivation jacobi_from_contact(const Form& theta);

/// Inverse of jacobi_from_contact on nondegenerate biderivations; throws DegenerateJacobi.
AtiyahForm atiyah_form_from_jacobi(const Multiderivation& j);

}  // namespace lbc
