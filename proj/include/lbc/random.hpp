#pragma once

// Seeded random polynomials for randomized identity checks.

#include <random>
#include <string>
#include <vector>

#include "lbc/expr.hpp"

namespace lbc {

struct PolyShape {
  int max_degree = 2;
  int max_terms = 3;
  int coef_range = 3;      // integer coefficients in [-range, range]
  double zero_chance = 0.0;  // probability of returning exactly 0
};

class RandomPoly {
 public:
  explicit RandomPoly(std::uint64_t seed) : rng_(seed) {}

  Expr poly(const std::vector<std::string>& vars, const PolyShape& shape = {});
  int integer(int lo, int hi);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace lbc
