#include "lbc/random.hpp"

namespace lbc {

int RandomPoly::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Expr RandomPoly::poly(const std::vector<std::string>& vars, const PolyShape& shape) {
  if (shape.zero_chance > 0 && std::bernoulli_distribution(shape.zero_chance)(rng_)) return Expr();
  Expr out;
  int terms = integer(1, shape.max_terms);
  for (int t = 0; t < terms; ++t) {
    int c = 0;
    while (c == 0) c = integer(-shape.coef_range, shape.coef_range);
    Expr term(c);
    int deg = integer(0, shape.max_degree);
    for (int k = 0; k < deg && !vars.empty(); ++k)
      term *= Expr::var(vars[static_cast<std::size_t>(integer(0, static_cast<int>(vars.size()) - 1))]);
    out += term;
  }
  return out;
}

}  // namespace lbc
