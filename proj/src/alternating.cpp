#include "lbc/alternating.hpp"

#include <algorithm>
#include <functional>

#include "lbc/errors.hpp"

namespace lbc {

int sort_with_sign(Index& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

std::vector<Index> increasing_tuples(int n, int k) {
  std::vector<Index> out;
  if (k < 0 || k > n) return out;
  Index cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Alternating::Alternating(int dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 0 || degree > dim)
    throw DegreeError("degree " + std::to_string(degree) + " outside [0, " + std::to_string(dim) + "]");
}

Expr Alternating::get(const Index& idx) const {
  if (static_cast<int>(idx.size()) != degree_) throw ArityError("index tuple has wrong length");
  Index s = idx;
  int sign = sort_with_sign(s);
  if (sign == 0) return Expr();
  auto it = comps_.find(s);
  if (it == comps_.end()) return Expr();
  return sign > 0 ? it->second : -it->second;
}

void Alternating::set(const Index& idx, const Expr& value) {
  if (static_cast<int>(idx.size()) != degree_) throw ArityError("index tuple has wrong length");
  Index s = idx;
  for (int i : s)
    if (i < 0 || i >= dim_) throw SlotError("index out of range");
  int sign = sort_with_sign(s);
  if (sign == 0) {
    if (!value.is_zero()) throw NotSkewSymmetric("nonzero value on a repeated index");
    return;
  }
  Expr v = sign > 0 ? value : -value;
  if (v.is_zero())
    comps_.erase(s);
  else
    comps_[s] = v;
}

void Alternating::add(const Index& idx, const Expr& value) {
  if (value.is_zero()) return;
  Index s = idx;
  int sign = sort_with_sign(s);
  if (sign == 0) throw NotSkewSymmetric("nonzero value on a repeated index");
  for (int i : s)
    if (i < 0 || i >= dim_) throw SlotError("index out of range");
  Expr& slot = comps_[s];
  slot += sign > 0 ? value : -value;
  if (slot.is_zero()) comps_.erase(s);
}

Alternating Alternating::operator-() const {
  return map([](const Expr& e) { return -e; });
}

Alternating& Alternating::operator+=(const Alternating& o) {
  if (o.dim_ != dim_ || o.degree_ != degree_) throw ShapeMismatch("adding alternating arrays of different shape");
  for (const auto& [idx, v] : o.comps_) add(idx, v);
  return *this;
}

Alternating& Alternating::operator-=(const Alternating& o) {
  if (o.dim_ != dim_ || o.degree_ != degree_) throw ShapeMismatch("subtracting alternating arrays of different shape");
  for (const auto& [idx, v] : o.comps_) add(idx, -v);
  return *this;
}

Alternating operator*(const Expr& f, const Alternating& a) {
  if (f.is_zero()) return Alternating(a.dim_, a.degree_);
  return a.map([&](const Expr& e) { return f * e; });
}

bool operator==(const Alternating& a, const Alternating& b) {
  return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
}

Alternating wedge(const Alternating& a, const Alternating& b) {
  if (a.dim() != b.dim()) throw ShapeMismatch("wedge of arrays over different dimensions");
  Alternating out(a.dim(), a.degree() + b.degree());
  for (const auto& [i, x] : a.components())
    for (const auto& [j, y] : b.components()) {
      Index k = i;
      k.insert(k.end(), j.begin(), j.end());
      Index s = k;
      int sign = sort_with_sign(s);
      if (sign == 0) continue;
      out.add(s, sign > 0 ? x * y : -(x * y));
    }
  return out;
}

Alternating interior(const std::vector<Expr>& v, const Alternating& a) {
  if (a.degree() == 0) throw DegreeError("contraction into a degree-0 object");
  if (static_cast<int>(v.size()) != a.dim()) throw ShapeMismatch("vector length differs from dimension");
  Alternating out(a.dim(), a.degree() - 1);
  for (const auto& [idx, val] : a.components()) {
    // idx = (i0, i1, ..): moving slot p to the front costs (-1)^p.
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const Expr& c = v[static_cast<std::size_t>(idx[p])];
      if (c.is_zero()) continue;
      Index rest = idx;
      rest.erase(rest.begin() + static_cast<long>(p));
      Expr term = c * val;
      out.add(rest, p % 2 == 0 ? term : -term);
    }
  }
  return out;
}

Expr evaluate(const Alternating& a, const std::vector<std::vector<Expr>>& vs) {
  if (static_cast<int>(vs.size()) != a.degree()) throw ArityError("wrong number of arguments");
  Alternating cur = a;
  for (const auto& v : vs) cur = interior(v, cur);
  auto it = cur.components().find(Index{});
  return it == cur.components().end() ? Expr() : it->second;
}

std::map<Index, Expr> insert_matrix_full(const Alternating& a, const std::vector<std::vector<Expr>>& m, int slot) {
  int n = a.dim(), k = a.degree();
  if (slot < 0 || slot >= k) throw SlotError("slot " + std::to_string(slot) + " out of range for degree " + std::to_string(k));
  std::map<Index, Expr> out;
  Index idx(static_cast<std::size_t>(k), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k) {
      Expr sum;
      Index probe = idx;
      int orig = idx[static_cast<std::size_t>(slot)];
      for (int j = 0; j < n; ++j) {
        const Expr& mj = m[static_cast<std::size_t>(j)][static_cast<std::size_t>(orig)];
        if (mj.is_zero()) continue;
        probe[static_cast<std::size_t>(slot)] = j;
        Expr c = a.get(probe);
        if (!c.is_zero()) sum += mj * c;
      }
      if (!sum.is_zero()) out[idx] = sum;
      return;
    }
    for (int i = 0; i < n; ++i) {
      idx[static_cast<std::size_t>(pos)] = i;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

Alternating from_full(int n, int k, const std::map<Index, Expr>& full) {
  Alternating out(n, k);
  for (const auto& idx : increasing_tuples(n, k)) {
    auto it = full.find(idx);
    if (it != full.end()) out.set(idx, it->second);
  }
  return out;
}

std::vector<Expr> skew_defect(const Alternating& alt, const std::map<Index, Expr>& full) {
  std::vector<Expr> res;
  int n = alt.dim(), k = alt.degree();
  Index idx(static_cast<std::size_t>(k), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k) {
      Index s = idx;
      int sign = sort_with_sign(s);
      auto it = full.find(idx);
      Expr v = it == full.end() ? Expr() : it->second;
      Expr want;
      if (sign != 0) {
        auto jt = full.find(s);
        Expr base = jt == full.end() ? Expr() : jt->second;
        want = sign > 0 ? base : -base;
      }
      Expr r = v - want;
      if (!r.is_zero()) res.push_back(r);
      return;
    }
    for (int i = 0; i < n; ++i) {
      idx[static_cast<std::size_t>(pos)] = i;
      rec(pos + 1);
    }
  };
  rec(0);
  return res;
}


}  // namespace lbc
