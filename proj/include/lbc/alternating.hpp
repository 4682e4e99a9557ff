#pragma once

// Alternating arrays indexed by strictly increasing tuples. Shared storage for
// forms, multivectors, algebroid cochains and frame views of Atiyah objects.

#include <map>
#include <vector>

#include "lbc/expr.hpp"

namespace lbc {

using Index = std::vector<int>;

/// Sorts idx in place and returns the permutation sign, or 0 on a repeat.
int sort_with_sign(Index& idx);

/// All strictly increasing k-tuples drawn from {0..n-1}, lexicographic.
std::vector<Index> increasing_tuples(int n, int k);

class Alternating {
 public:
  Alternating() = default;
  Alternating(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }

  /// Component at an arbitrary index tuple (sign applied, repeats give 0).
  Expr get(const Index& idx) const;
  void set(const Index& idx, const Expr& value);
  void add(const Index& idx, const Expr& value);

  const std::map<Index, Expr>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  Alternating operator-() const;
  Alternating& operator+=(const Alternating& o);
  Alternating& operator-=(const Alternating& o);
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  friend Alternating operator*(const Expr& f, const Alternating& a);
  friend bool operator==(const Alternating& a, const Alternating& b);

  template <class F>
  Alternating map(F&& f) const {
    Alternating out(dim_, degree_);
    for (const auto& [idx, v] : comps_) out.set(idx, f(v));
    return out;
  }

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::map<Index, Expr> comps_;
};

/// (a^b)_K = sum over splittings K = I u J of sign(I,J) a_I b_J.
Alternating wedge(const Alternating& a, const Alternating& b);

/// Contraction of a degree-1 covector/vector v into the first slot.
Alternating interior(const std::vector<Expr>& v, const Alternating& a);

/// Full evaluation on a list of vectors: inserts v[0] first, then v[1], ...
Expr evaluate(const Alternating& a, const std::vector<std::vector<Expr>>& vs);

/// Inserts the matrix m into slot s: out(.., v_s, ..) = a(.., m v_s, ..).
/// The result is not necessarily alternating; see insert_matrix_full.
std::map<Index, Expr> insert_matrix_full(const Alternating& a, const std::vector<std::vector<Expr>>& m, int slot);

/// Alternating array read off the increasing tuples of a full component map.
Alternating from_full(int n, int k, const std::map<Index, Expr>& full);

/// Nonzero differences full(idx) - sign * full(sorted idx); empty iff alternating.
std::vector<Expr> skew_defect(const Alternating& shape, const std::map<Index, Expr>& full);

}  // namespace lbc
