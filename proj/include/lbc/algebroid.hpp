#pragma once

// Lie algebroids in a coordinate frame {e_a}:
//   rho(e_a) = sum_i anchor[i][a] d_i,   [e_a, e_b] = sum_c bracket[a][b][c] e_c,
// optionally with a line representation  nabla_{e_a} l = rho(e_a) l + rep[a] l.

#include <optional>
#include <string>
#include <vector>

#include "lbc/atiyah.hpp"
#include "lbc/report.hpp"
#include "lbc/tensor.hpp"

namespace lbc {

/// Frame coefficients of a section.
using Section = std::vector<Expr>;

struct AlgebroidSpec {
  Chart base;
  int rank = 0;
  Matrix anchor;                              // dim x rank
  std::vector<std::vector<Section>> bracket;  // [a][b] -> section, antisymmetric
  std::optional<std::vector<Expr>> rep;
  std::vector<std::string> frame_names;

  AlgebroidSpec() = default;
  AlgebroidSpec(Chart ch, int rk);

  /// Sets [e_a, e_b] = s and [e_b, e_a] = -s.
  void set_bracket(int a, int b, const Section& s);
  VectorField rho(const Section& s) const;
  Section frame_section(int a) const;
  Section zero_section() const;
};

Section operator+(const Section& a, const Section& b);
Section operator-(const Section& a, const Section& b);
Section operator*(const Expr& f, const Section& s);

/// [s, t] = s^a t^b [e_a, e_b] + rho(s)(t) - rho(t)(s).
Section section_bracket(const AlgebroidSpec& A, const Section& s, const Section& t);

/// Anchor compatibility, frame Jacobi identity and, when present, flatness of
/// the representation.
Report verify_algebroid(const AlgebroidSpec& A, std::uint64_t seed = 42);

/// Cartan differential of a k-cochain (alternating in the frame). Uses the
/// representation when `with_rep`; throws MissingRepresentation if absent.
Alternating algebroid_differential(const AlgebroidSpec& A, const Alternating& c, bool with_rep);

/// DL with frame {d_1..d_n, 1}: rho(d_i) = d_i, rho(1) = 0, zero brackets,
/// tautological representation rep = (0, .., 0, 1).
AlgebroidSpec gauge_algebroid(const Chart& ch);

/// (T*M)_pi on the frame {dx_i}: [dx_a, dx_b] = d pi^{ab}, rho = pi#.
AlgebroidSpec cotangent_algebroid(const Multivector& pi);

/// Jet algebroid of a biderivation on the frame {(dx_i,0), (0,1)}:
///   [psi, chi]_J = L_{J#psi} chi - L_{J#chi} psi - d_D J(psi, chi),
/// anchor = symbol of J#.
AlgebroidSpec jet_algebroid(const Multiderivation& j);

/// Scalar k-Spencer operator stored on frame sections; extended to all
/// sections by D(f e_a) = f D(e_a) + df ^ l(e_a).
struct SpencerData {
  int k = 1;
  std::vector<Form> D;    // degree k
  std::vector<Form> ell;  // degree k-1
};

Form spencer_D(const AlgebroidSpec& A, const SpencerData& S, const Section& s);
Form spencer_ell(const AlgebroidSpec& A, const SpencerData& S, const Section& s);

/// The three Spencer identities on all frame pairs and on 5 random pairs:
///   L_{rho a} D(b) - L_{rho b} D(a) - D([a,b]) = 0
///   L_{rho a} l(b) - i_{rho b} D(a) - l([a,b]) = 0
///   i_{rho a} l(b) + i_{rho b} l(a) = 0
Report verify_spencer(const AlgebroidSpec& A, const SpencerData& S, std::uint64_t seed = 42);

/// (d o N*, N*) on the cotangent frame.
SpencerData spencer_from_nijenhuis(const Tensor11& n);

/// Algebroid derivation: values on frame sections plus symbol, extended by
/// delta(f s) = f delta(s) + symbol(f) s.
struct AlgebroidDerivation {
  std::vector<Section> frame_values;
  VectorField symbol;
};

Section apply_derivation(const AlgebroidSpec& A, const AlgebroidDerivation& d, const Section& s);

/// delta[a,b] = [delta a, b] + [a, delta b] and [sigma(delta), rho a] = rho(delta a) on frames.
Report verify_algebroid_derivation(const AlgebroidSpec& A, const AlgebroidDerivation& d, std::uint64_t seed = 42);

/// delta = L_zeta - 1 on the cotangent frame: delta(dx_a) = d(zeta^a) - dx_a.
AlgebroidDerivation homogeneity_derivation(const Multivector& pi, const VectorField& zeta);

/// Runs verify_algebroid_derivation for L_zeta - 1 on (T*M)_pi next to the
/// direct test L_zeta pi + pi = 0.
Report check_homogeneity_derivation(const Multivector& pi, const VectorField& zeta, std::uint64_t seed = 42);

}  // namespace lbc
