#include "lbc/groupoid.hpp"

#include "lbc/errors.hpp"

namespace lbc {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

void append(std::vector<Expr>& to, const std::vector<Expr>& from) { to.insert(to.end(), from.begin(), from.end()); }

std::vector<Expr> vars_of(const Chart& ch) {
  std::vector<Expr> out;
  for (const auto& v : ch.vars()) out.push_back(Expr::var(v));
  return out;
}

std::vector<std::string> suffixed(const Chart& m, int copy) {
  std::vector<std::string> out;
  for (const auto& v : m.vars()) out.push_back(v + "_" + std::to_string(copy));
  return out;
}

// Components of copy i (0-based) of M inside a chart built from consecutive copies.
std::vector<Expr> copy_of(const Chart& ch, int n, int i) {
  std::vector<Expr> out;
  for (int a = 0; a < n; ++a) out.push_back(Expr::var(ch.var(i * n + a)));
  return out;
}

std::vector<Expr> concat(std::vector<Expr> a, const std::vector<Expr>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Expr> slice(const std::vector<Expr>& v, int from, int count) {
  return {v.begin() + from, v.begin() + from + count};
}

std::vector<Expr> map_difference(const SmoothMap& a, const SmoothMap& b) {
  require_same_chart(a.source, b.source, "map comparison");
  require_same_chart(a.target, b.target, "map comparison");
  std::vector<Expr> out;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    Expr d = a.c[i] - b.c[i];
    if (!d.is_zero()) out.push_back(d);
  }
  return out;
}

AlgebroidSpec tangent_algebroid(const Chart& m) {
  AlgebroidSpec a(m, m.dim());
  a.anchor = identity_matrix(m.dim());
  for (int i = 0; i < m.dim(); ++i) a.frame_names[u(i)] = "d" + m.var(i);
  return a;
}

VectorField push(const SmoothMap& phi, const VectorField& x) {
  Matrix jac = phi.jacobian();
  std::vector<Expr> out(u(phi.target.dim()));
  for (int i = 0; i < phi.target.dim(); ++i)
    for (int j = 0; j < phi.source.dim(); ++j) out[u(i)] += jac[u(i)][u(j)] * x[j];
  return VectorField(phi.target, out);
}

// Z o phi as components over phi's source, one per target coordinate.
std::vector<Expr> along(const SmoothMap& phi, const VectorField& z) {
  auto b = phi.bindings();
  std::vector<Expr> out;
  for (const auto& e : z.c) out.push_back(substitute(e, b));
  return out;
}

std::vector<Expr> defect(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  std::vector<Expr> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Expr d = a[i] - b[i];
    if (!d.is_zero()) out.push_back(d);
  }
  return out;
}

}  // namespace

ChartGroupoid pair_groupoid(const Chart& m) {
  const int n = m.dim();
  ChartGroupoid g;
  g.name = "pair(" + m.name() + ")";
  g.M = m;
  std::vector<std::string> gv = suffixed(m, 1), wv = gv, tv = gv;
  for (const auto& v : suffixed(m, 2)) gv.push_back(v);
  wv = gv;
  for (const auto& v : suffixed(m, 3)) wv.push_back(v);
  tv = wv;
  for (const auto& v : suffixed(m, 4)) tv.push_back(v);
  g.G = Chart(g.name, gv);
  Chart W(g.name + "^(2)", wv);
  Chart W3(g.name + "^(3)", tv);

  auto gx = copy_of(g.G, n, 0), gy = copy_of(g.G, n, 1);
  g.t = SmoothMap(g.G, m, gx);
  g.s = SmoothMap(g.G, m, gy);
  g.unit = SmoothMap(m, g.G, concat(vars_of(m), vars_of(m)));
  g.inv = SmoothMap(g.G, g.G, concat(gy, gx));

  auto w1 = copy_of(W, n, 0), w2 = copy_of(W, n, 1), w3 = copy_of(W, n, 2);
  g.comp = {W, SmoothMap(W, g.G, concat(w1, w2)), SmoothMap(W, g.G, concat(w2, w3)), SmoothMap(W, g.G, concat(w1, w3))};

  auto c1 = copy_of(W3, n, 0), c2 = copy_of(W3, n, 1), c3 = copy_of(W3, n, 2), c4 = copy_of(W3, n, 3);
  g.triple = TripleChart{W3, SmoothMap(W3, g.G, concat(c1, c2)), SmoothMap(W3, g.G, concat(c2, c3)),
                         SmoothMap(W3, g.G, concat(c3, c4))};

  g.pair = [W, n](const SmoothMap& a, const SmoothMap& b) {
    return SmoothMap(a.source, W, concat(a.c, slice(b.c, n, n)));
  };
  Chart G = g.G;
  g.right_invariant = [G](int a) {
    VectorField v(G);
    v[a] = Expr(1);
    return v;
  };
  g.algebroid = tangent_algebroid(m);
  return g;
}

ChartGroupoid vb_addition_groupoid(const Chart& base, int k) {
  if (k < 1) throw ShapeMismatch("fiber rank must be at least 1");
  const int n = base.dim();
  auto fiber = [k](const std::string& stem) {
    std::vector<std::string> out;
    for (int i = 1; i <= k; ++i) out.push_back(k == 1 ? stem : stem + std::to_string(i));
    return out;
  };
  ChartGroupoid g;
  g.name = "vb(" + base.name() + "," + std::to_string(k) + ")";
  g.M = base;
  std::vector<std::string> gv = base.vars();
  for (const auto& v : fiber("p")) gv.push_back(v);
  std::vector<std::string> wv = gv;
  for (const auto& v : fiber("q")) wv.push_back(v);
  std::vector<std::string> tv = wv;
  for (const auto& v : fiber("w")) tv.push_back(v);
  g.G = Chart(g.name, gv);
  Chart W(g.name + "^(2)", wv);
  Chart W3(g.name + "^(3)", tv);

  auto gall = vars_of(g.G);
  auto x = slice(gall, 0, n), p = slice(gall, n, k);
  g.s = SmoothMap(g.G, base, x);
  g.t = g.s;
  g.unit = SmoothMap(base, g.G, concat(vars_of(base), std::vector<Expr>(u(k))));
  std::vector<Expr> minus_p;
  for (const auto& e : p) minus_p.push_back(-e);
  g.inv = SmoothMap(g.G, g.G, concat(x, minus_p));

  auto wall = vars_of(W);
  auto wx = slice(wall, 0, n), wp = slice(wall, n, k), wq = slice(wall, n + k, k);
  std::vector<Expr> sum;
  for (int i = 0; i < k; ++i) sum.push_back(wp[u(i)] + wq[u(i)]);
  g.comp = {W, SmoothMap(W, g.G, concat(wx, wp)), SmoothMap(W, g.G, concat(wx, wq)), SmoothMap(W, g.G, concat(wx, sum))};

  auto tall = vars_of(W3);
  auto tx = slice(tall, 0, n);
  g.triple = TripleChart{W3, SmoothMap(W3, g.G, concat(tx, slice(tall, n, k))),
                         SmoothMap(W3, g.G, concat(tx, slice(tall, n + k, k))),
                         SmoothMap(W3, g.G, concat(tx, slice(tall, n + 2 * k, k)))};

  g.pair = [W, n, k](const SmoothMap& a, const SmoothMap& b) {
    return SmoothMap(a.source, W, concat(a.c, slice(b.c, n, k)));
  };
  Chart G = g.G;
  g.right_invariant = [G, n](int a) {
    VectorField v(G);
    v[n + a] = Expr(1);
    return v;
  };
  AlgebroidSpec alg(base, k);
  alg.anchor = zero_matrix(n, k);
  g.algebroid = alg;
  return g;
}

ChartGroupoid scaling_extension(const ChartGroupoid& g, const std::string& r) {
  auto extend = [&](const Chart& ch, const std::string& suffix) {
    if (ch.has(r)) throw ChartMismatch("variable " + r + " already present in " + ch.name());
    std::vector<std::string> vars = ch.vars();
    vars.push_back(r);
    return Chart(ch.name() + suffix, vars);
  };
  const Expr rv = Expr::var(r);
  ChartGroupoid e;
  e.name = g.name + "~";
  e.G = extend(g.G, "~");
  e.M = extend(g.M, "~");
  Chart W = extend(g.comp.W, "~");

  // phi x id_r between extended charts; phi's source variables are unchanged.
  auto lift = [&](const SmoothMap& phi, const Chart& src, const Chart& tgt) {
    std::vector<Expr> comps = phi.c;
    comps.push_back(rv);
    return SmoothMap(src, tgt, comps);
  };
  e.s = lift(g.s, e.G, e.M);
  e.t = lift(g.t, e.G, e.M);
  e.unit = lift(g.unit, e.M, e.G);
  e.inv = lift(g.inv, e.G, e.G);
  e.comp = {W, lift(g.comp.p1, W, e.G), lift(g.comp.p2, W, e.G), lift(g.comp.mul, W, e.G)};
  if (g.triple) {
    Chart W3 = extend(g.triple->W3, "~");
    e.triple = TripleChart{W3, lift(g.triple->q1, W3, e.G), lift(g.triple->q2, W3, e.G), lift(g.triple->q3, W3, e.G)};
  }

  ChartGroupoid base = g;
  Chart eG = e.G;
  e.pair = [base, W](const SmoothMap& a, const SmoothMap& b) {
    // drop r, pair in the base groupoid, carry r of the first factor
    std::vector<Expr> ac(a.c.begin(), a.c.end() - 1), bc(b.c.begin(), b.c.end() - 1);
    SmoothMap inner = base.pair(SmoothMap(a.source, base.G, ac), SmoothMap(b.source, base.G, bc));
    std::vector<Expr> comps = inner.c;
    comps.push_back(a.c.back());
    return SmoothMap(a.source, W, comps);
  };
  if (g.right_invariant) {
    auto rule = g.right_invariant;
    e.right_invariant = [rule, eG](int a) {
      std::vector<Expr> comps = rule(a).c;
      comps.emplace_back();
      return VectorField(eG, comps);
    };
  }
  if (g.algebroid) {
    AlgebroidSpec alg = *g.algebroid;
    alg.base = e.M;
    alg.anchor.push_back(std::vector<Expr>(u(alg.rank)));
    e.algebroid = alg;
  }
  std::vector<Expr> zg(u(e.G.dim())), zw(u(W.dim()));
  zg.back() = rv;
  zw.back() = rv;
  e.euler = VectorField(e.G, zg);
  e.euler_lift = VectorField(W, zw);
  return e;
}

Report verify_groupoid(const ChartGroupoid& g, std::uint64_t seed) {
  Report rep;
  rep.kind = "groupoid";
  rep.seed = seed;
  const auto& c = g.comp;
  SmoothMap idG = SmoothMap::identity(g.G), idM = SmoothMap::identity(g.M);

  rep.axioms.push_back(
      check_zero("composable", "s o p1 = t o p2", map_difference(compose(g.s, c.p1), compose(g.t, c.p2)), seed));

  std::vector<Expr> units = map_difference(compose(g.s, g.unit), idM);
  append(units, map_difference(compose(g.t, g.unit), idM));
  rep.axioms.push_back(check_zero("units", "s o 1 = t o 1 = id", units, seed));

  std::vector<Expr> inv = map_difference(compose(g.s, g.inv), g.t);
  append(inv, map_difference(compose(g.t, g.inv), g.s));
  append(inv, map_difference(compose(g.inv, g.inv), idG));
  rep.axioms.push_back(check_zero("inverse", "s o i = t, t o i = s, i o i = id", inv, seed));

  std::vector<Expr> mult = map_difference(compose(g.s, c.mul), compose(g.s, c.p2));
  append(mult, map_difference(compose(g.t, c.mul), compose(g.t, c.p1)));
  rep.axioms.push_back(check_zero("source-target", "s(g h) = s(h), t(g h) = t(g)", mult, seed));

  SmoothMap ut = compose(g.unit, g.t), us = compose(g.unit, g.s);
  std::vector<Expr> unit_law = map_difference(compose(c.mul, g.pair(ut, idG)), idG);
  append(unit_law, map_difference(compose(c.mul, g.pair(idG, us)), idG));
  rep.axioms.push_back(check_zero("unit-law", "1_{t g} g = g = g 1_{s g}", unit_law, seed));

  std::vector<Expr> inv_law = map_difference(compose(c.mul, g.pair(idG, g.inv)), ut);
  append(inv_law, map_difference(compose(c.mul, g.pair(g.inv, idG)), us));
  rep.axioms.push_back(check_zero("inverse-law", "g g^-1 = 1_{t g}, g^-1 g = 1_{s g}", inv_law, seed));

  if (g.triple) {
    const auto& tr = *g.triple;
    SmoothMap gh = compose(c.mul, g.pair(tr.q1, tr.q2));
    SmoothMap hk = compose(c.mul, g.pair(tr.q2, tr.q3));
    rep.axioms.push_back(check_zero("associativity", "(g h) k = g (h k)",
                                    map_difference(compose(c.mul, g.pair(gh, tr.q3)),
                                                   compose(c.mul, g.pair(tr.q1, hk))),
                                    seed));
  }
  return rep;
}

Report is_multiplicative_function(const ChartGroupoid& g, const Expr& f, std::uint64_t seed) {
  for (const auto& v : f.variables())
    if (!g.G.has(v)) throw ChartMismatch("function uses " + v + ", not a variable of " + g.G.name());
  const auto& c = g.comp;
  Expr d = pullback_fn(c.mul, f) - pullback_fn(c.p1, f) - pullback_fn(c.p2, f);
  Report rep;
  rep.kind = "multiplicative-function";
  rep.seed = seed;
  rep.axioms.push_back(check_zero("multiplicative", "f(g h) = f(g) + f(h)", {d}, seed));
  return rep;
}

Report is_multiplicative_form(const ChartGroupoid& g, const Form& w, std::uint64_t seed) {
  require_same_chart(g.G, w.chart, "is_multiplicative_form");
  const auto& c = g.comp;
  Form d = pullback(c.mul, w) - pullback(c.p1, w) - pullback(c.p2, w);
  Report rep;
  rep.kind = "multiplicative-form";
  rep.seed = seed;
  rep.axioms.push_back(check_zero("multiplicative", "m* w = pr1* w + pr2* w", residuals(d), seed));
  return rep;
}

Report is_multiplicative_vf(const ChartGroupoid& g, const VectorField& z, const VectorField& z_w,
                            std::uint64_t seed) {
  require_same_chart(g.G, z.chart, "is_multiplicative_vf");
  require_same_chart(g.comp.W, z_w.chart, "is_multiplicative_vf lift");
  const auto& c = g.comp;
  for (const SmoothMap* p : {&c.p1, &c.p2}) {
    auto bad = defect(push(*p, z_w).c, along(*p, z));
    if (!bad.empty())
      throw LiftMismatch("lift does not project to Z along a factor projection: " + to_string(bad.front()));
  }
  Report rep;
  rep.kind = "multiplicative-vector-field";
  rep.seed = seed;
  rep.axioms.push_back(
      check_zero("multiplicative", "dm(Z_W) = Z o m", defect(push(c.mul, z_w).c, along(c.mul, z)), seed));
  return rep;
}

SpencerData spencer_of_form(const ChartGroupoid& g, const Form& w) {
  if (!g.right_invariant || !g.algebroid) throw MissingRightInvariantRule("groupoid " + g.name + " has no right-invariant rule");
  require_same_chart(g.G, w.chart, "spencer_of_form");
  SpencerData s;
  s.k = w.degree();
  for (int a = 0; a < g.algebroid->rank; ++a) {
    VectorField x = g.right_invariant(a);
    s.D.push_back(pullback(g.unit, lie_derivative(x, w)));
    s.ell.push_back(pullback(g.unit, interior(x, w)));
  }
  return s;
}

}  // namespace lbc
