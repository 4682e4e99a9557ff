#pragma once

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "lbc/atiyah.hpp"
#include "lbc/cli/parse_expr.hpp"
#include "lbc/expr.hpp"
#include "lbc/tensor.hpp"

namespace lbc {
inline void PrintTo(const Expr& e, std::ostream* os) { *os << to_string(e); }
inline void PrintTo(const VectorField& v, std::ostream* os) { *os << to_string(v); }
inline void PrintTo(const Form& w, std::ostream* os) { *os << to_string(w); }
inline void PrintTo(const Multivector& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const Tensor11& n, std::ostream* os) {
  for (const auto& row : n.m) {
    *os << "[";
    for (const auto& e : row) *os << " " << to_string(e);
    *os << " ]";
  }
}
inline void PrintTo(const VectorValued2Form& t, std::ostream* os) {
  for (int a = 0; a < t.chart.dim(); ++a)
    for (int b = a + 1; b < t.chart.dim(); ++b) *os << "(" << a << "," << b << "):" << to_string(t.value(a, b)) << " ";
}
inline void print_frame(const std::vector<Expr>& v, std::ostream* os) {
  *os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) *os << (i ? ", " : "") << to_string(v[i]);
  *os << ")";
}
inline void PrintTo(const Derivation& d, std::ostream* os) { print_frame(d.frame(), os); }
inline void PrintTo(const JetSection& j, std::ostream* os) { print_frame(j.frame(), os); }
inline void PrintTo(const Alternating& a, std::ostream* os) {
  for (const auto& [idx, e] : a.components()) {
    *os << "[";
    for (int i : idx) *os << i;
    *os << "]=" << to_string(e) << " ";
  }
}
inline void PrintTo(const AtiyahForm& w, std::ostream* os) { PrintTo(w.frame(), os); }
inline void PrintTo(const Multiderivation& d, std::ostream* os) { PrintTo(d.frame(), os); }
}  // namespace lbc

namespace lbc::test {

inline Expr E(const std::string& s) { return cli::parse_expr(s); }

inline Chart chart(std::vector<std::string> vars, std::string name = "M") { return Chart(std::move(name), std::move(vars)); }

/// Vector field from per-variable strings, in chart order.
inline VectorField vf(const Chart& ch, const std::vector<std::string>& comps) {
  std::vector<Expr> c;
  for (const auto& s : comps) c.push_back(E(s));
  return VectorField(ch, c);
}

inline Form form(const Chart& ch, int deg, const std::vector<std::pair<Index, std::string>>& comps) {
  Form w(ch, deg);
  for (const auto& [idx, s] : comps) w.a.add(idx, E(s));
  return w;
}

inline Multivector mv(const Chart& ch, int deg, const std::vector<std::pair<Index, std::string>>& comps) {
  Multivector p(ch, deg);
  for (const auto& [idx, s] : comps) p.a.add(idx, E(s));
  return p;
}

inline Tensor11 t11(const Chart& ch, const std::vector<std::vector<std::string>>& rows) {
  Matrix m;
  for (const auto& r : rows) {
    std::vector<Expr> row;
    for (const auto& s : r) row.push_back(E(s));
    m.push_back(row);
  }
  return Tensor11(ch, m);
}

inline bool all_zero(const std::vector<Expr>& rs) {
  for (const auto& e : rs)
    if (!e.is_zero()) return false;
  return true;
}

}  // namespace lbc::test

#define EXPECT_EXPR_EQ(a, b) EXPECT_EQ(::lbc::to_string(a), ::lbc::to_string(b))
