#pragma once

// Exact linear algebra over expressions: cofactor determinants and inverses
// whose entries stay Laurent polynomials.

#include <optional>

#include "lbc/tensor.hpp"

namespace lbc {

Expr determinant(const Matrix& m);

/// a / b when b divides a exactly in the Laurent ring, nullopt otherwise.
std::optional<Expr> exact_divide(const Expr& a, const Expr& b);

/// Inverse via the adjugate. Returns nullopt when the determinant is zero;
/// throws NonLaurent when an entry of the inverse is not a Laurent polynomial.
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace lbc
