#include "lbc/matrix.hpp"

#include <algorithm>

#include "lbc/errors.hpp"

namespace lbc {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

Expr det_rec(const Matrix& m, std::vector<int>& cols, int row) {
  int n = static_cast<int>(m.size());
  if (row == n) return Expr(1);
  Expr out;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    int c = cols[k];
    const Expr& e = m[u(row)][u(c)];
    if (!e.is_zero()) {
      cols.erase(cols.begin() + static_cast<long>(k));
      Expr minor = det_rec(m, cols, row + 1);
      cols.insert(cols.begin() + static_cast<long>(k), c);
      if (!minor.is_zero()) out += sign > 0 ? e * minor : -(e * minor);
    }
    sign = -sign;
  }
  return out;
}

using Exponents = std::vector<std::pair<Atom, int>>;

// Lex comparison of two monomials whose atoms are sorted by compare(Atom).
int lex(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size())
      c = 1;
    else if (j == b.size())
      c = -1;
    else
      c = compare(a[i].first, b[j].first);
    if (c < 0) return a[i].second > 0 ? 1 : -1;
    if (c > 0) return b[j].second > 0 ? -1 : 1;
    if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

const detail::Term& leading(const Expr& e) {
  const auto& ts = e.terms();
  return *std::max_element(ts.begin(), ts.end(),
                           [](const detail::Term& x, const detail::Term& y) { return lex(x.mono, y.mono) < 0; });
}

// Monomial making every exponent of e nonnegative.
Expr clearing_monomial(const Expr& e) {
  std::vector<std::pair<Atom, int>> worst;
  for (const auto& t : e.terms())
    for (const auto& [a, k] : t.mono) {
      if (k >= 0) continue;
      auto it = std::find_if(worst.begin(), worst.end(), [&](const auto& w) { return compare(w.first, a) == 0; });
      if (it == worst.end())
        worst.emplace_back(a, k);
      else
        it->second = std::min(it->second, k);
    }
  detail::Poly p;
  Monomial m;
  for (const auto& [a, k] : worst) m.emplace_back(a, -k);
  p.push_back(detail::Term{m, Rational(1)});
  return Expr::from_poly(std::move(p));
}

// Largest monomial dividing every term of e.
Expr monomial_content(const Expr& e) {
  std::vector<std::pair<Atom, int>> best;
  bool first = true;
  for (const auto& t : e.terms()) {
    if (first) {
      best.assign(t.mono.begin(), t.mono.end());
      first = false;
      continue;
    }
    std::vector<std::pair<Atom, int>> next;
    for (const auto& [a, k] : best) {
      auto it = std::find_if(t.mono.begin(), t.mono.end(), [&](const auto& x) { return compare(x.first, a) == 0; });
      int have = it == t.mono.end() ? 0 : it->second;
      int m = std::min(k, have);
      if (m != 0) next.emplace_back(a, m);
    }
    // Atoms absent from best but negative here also lower the content.
    for (const auto& [a, k] : t.mono) {
      if (k >= 0) continue;
      auto it = std::find_if(best.begin(), best.end(), [&](const auto& x) { return compare(x.first, a) == 0; });
      if (it == best.end()) next.emplace_back(a, k);
    }
    best = std::move(next);
  }
  detail::Poly p;
  p.push_back(detail::Term{Monomial(best.begin(), best.end()), Rational(1)});
  return Expr::from_poly(std::move(p));
}

bool divides(const Monomial& d, const Monomial& n) {
  for (const auto& [a, k] : d) {
    auto it = std::find_if(n.begin(), n.end(), [&](const auto& x) { return compare(x.first, a) == 0; });
    int have = it == n.end() ? 0 : it->second;
    if (have < k) return false;
  }
  return true;
}

}  // namespace

Expr determinant(const Matrix& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw ShapeMismatch("determinant of a non-square matrix");
  std::vector<int> cols;
  for (int i = 0; i < static_cast<int>(m.size()); ++i) cols.push_back(i);
  return det_rec(m, cols, 0);
}

std::optional<Expr> exact_divide(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero("exact division by zero");
  if (a.is_zero()) return Expr();
  if (b.is_monomial()) return a * pow(b, -1);
  // Strip the monomial content of b, clear negative exponents of a, then run
  // polynomial division with the lex order.
  Expr content = monomial_content(b);
  Expr den = b * pow(content, -1);
  Expr ma = clearing_monomial(a);
  Expr num = a * ma;
  Expr scale = pow(ma * content, -1);
  const detail::Term& ld = leading(den);
  Expr quotient;
  Expr rem = num;
  for (int guard = 0; !rem.is_zero(); ++guard) {
    if (guard > 10000) return std::nullopt;
    const detail::Term& lr = leading(rem);
    if (!divides(ld.mono, lr.mono)) return std::nullopt;
    detail::Poly q;
    Monomial qm = lr.mono;
    for (const auto& [atom, k] : ld.mono) qm.emplace_back(atom, -k);
    q.push_back(detail::Term{qm, lr.coef / ld.coef});
    Expr qt = Expr::from_poly(std::move(q));
    quotient += qt;
    rem -= qt * den;
  }
  return quotient * scale;
}

std::optional<Matrix> inverse(const Matrix& m) {
  int n = static_cast<int>(m.size());
  Expr det = determinant(m);
  if (det.is_zero()) return std::nullopt;
  Matrix inv = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // inv[i][j] = (-1)^{i+j} minor(j, i) / det
      Matrix minor;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Expr> row;
        for (int c = 0; c < n; ++c)
          if (c != i) row.push_back(m[u(r)][u(c)]);
        minor.push_back(row);
      }
      Expr cof = determinant(minor);
      if ((i + j) % 2) cof = -cof;
      if (cof.is_zero()) continue;
      auto q = exact_divide(cof, det);
      if (!q) throw NonLaurent("inverse entry " + to_string(cof) + " / (" + to_string(det) + ") is not a Laurent polynomial");
      inv[u(i)][u(j)] = *q;
    }
  return inv;
}

}  // namespace lbc
