#include "lbc/algebroid.hpp"

#include "lbc/errors.hpp"
#include "lbc/random.hpp"

namespace lbc {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

void append(std::vector<Expr>& to, const std::vector<Expr>& from) { to.insert(to.end(), from.begin(), from.end()); }

std::vector<Expr> nonzero(const Section& s) {
  std::vector<Expr> r;
  for (const auto& e : s)
    if (!e.is_zero()) r.push_back(e);
  return r;
}

Section random_section(const AlgebroidSpec& A, RandomPoly& rng) {
  Section s;
  for (int a = 0; a < A.rank; ++a) s.push_back(rng.poly(A.base.vars()));
  return s;
}

}  // namespace

AlgebroidSpec::AlgebroidSpec(Chart ch, int rk)
    : base(std::move(ch)),
      rank(rk),
      anchor(zero_matrix(base.dim(), rk)),
      bracket(u(rk), std::vector<Section>(u(rk), Section(u(rk)))) {
  for (int a = 0; a < rk; ++a) frame_names.push_back("e" + std::to_string(a + 1));
}

void AlgebroidSpec::set_bracket(int a, int b, const Section& s) {
  if (static_cast<int>(s.size()) != rank) throw ShapeMismatch("bracket section has wrong rank");
  if (a == b) {
    for (const auto& e : s)
      if (!e.is_zero()) throw NotSkewSymmetric("[e_a, e_a] must vanish");
    return;
  }
  bracket[u(a)][u(b)] = s;
  bracket[u(b)][u(a)] = Expr(-1) * s;
}

VectorField AlgebroidSpec::rho(const Section& s) const {
  VectorField v(base);
  for (int i = 0; i < base.dim(); ++i)
    for (int a = 0; a < rank; ++a)
      if (!anchor[u(i)][u(a)].is_zero() && !s[u(a)].is_zero()) v[i] += anchor[u(i)][u(a)] * s[u(a)];
  return v;
}

Section AlgebroidSpec::frame_section(int a) const {
  Section s(u(rank));
  s[u(a)] = Expr(1);
  return s;
}

Section AlgebroidSpec::zero_section() const { return Section(u(rank)); }

Section operator+(const Section& a, const Section& b) {
  if (a.size() != b.size()) throw ShapeMismatch("section sum of different ranks");
  Section s = a;
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
  return s;
}

Section operator-(const Section& a, const Section& b) {
  if (a.size() != b.size()) throw ShapeMismatch("section difference of different ranks");
  Section s = a;
  for (std::size_t i = 0; i < s.size(); ++i) s[i] -= b[i];
  return s;
}

Section operator*(const Expr& f, const Section& s) {
  Section out = s;
  for (auto& e : out) e = f * e;
  return out;
}

Section section_bracket(const AlgebroidSpec& A, const Section& s, const Section& t) {
  Section out = A.zero_section();
  for (int a = 0; a < A.rank; ++a) {
    if (s[u(a)].is_zero()) continue;
    for (int b = 0; b < A.rank; ++b) {
      if (t[u(b)].is_zero()) continue;
      out = out + (s[u(a)] * t[u(b)]) * A.bracket[u(a)][u(b)];
    }
  }
  VectorField rs = A.rho(s), rt = A.rho(t);
  for (int c = 0; c < A.rank; ++c) out[u(c)] += apply(rs, t[u(c)]) - apply(rt, s[u(c)]);
  return out;
}

Report verify_algebroid(const AlgebroidSpec& A, std::uint64_t seed) {
  Report rep;
  rep.kind = "algebroid";
  rep.seed = seed;

  std::vector<Expr> anchor_res;
  for (int a = 0; a < A.rank; ++a)
    for (int b = a + 1; b < A.rank; ++b) {
      auto ea = A.frame_section(a), eb = A.frame_section(b);
      append(anchor_res, residuals(A.rho(A.bracket[u(a)][u(b)]) - lie_bracket(A.rho(ea), A.rho(eb))));
    }
  rep.axioms.push_back(check_zero("anchor", "rho[a,b] = [rho a, rho b]", anchor_res, seed));

  std::vector<Expr> jacobi_res;
  for (int a = 0; a < A.rank; ++a)
    for (int b = a + 1; b < A.rank; ++b)
      for (int c = b + 1; c < A.rank; ++c) {
        auto ea = A.frame_section(a), eb = A.frame_section(b), ec = A.frame_section(c);
        Section j = section_bracket(A, section_bracket(A, ea, eb), ec) +
                    section_bracket(A, section_bracket(A, eb, ec), ea) +
                    section_bracket(A, section_bracket(A, ec, ea), eb);
        append(jacobi_res, nonzero(j));
      }
  rep.axioms.push_back(check_zero("jacobi", "[[a,b],c] + [[b,c],a] + [[c,a],b] = 0", jacobi_res, seed));

  if (A.rep) {
    const auto& phi = *A.rep;
    std::vector<Expr> flat_res;
    for (int a = 0; a < A.rank; ++a)
      for (int b = a + 1; b < A.rank; ++b) {
        Expr r = apply(A.rho(A.frame_section(a)), phi[u(b)]) - apply(A.rho(A.frame_section(b)), phi[u(a)]);
        for (int c = 0; c < A.rank; ++c) r -= A.bracket[u(a)][u(b)][u(c)] * phi[u(c)];
        if (!r.is_zero()) flat_res.push_back(r);
      }
    rep.axioms.push_back(
        check_zero("representation", "rho(a) phi_b - rho(b) phi_a - C^c_ab phi_c = 0", flat_res, seed));
  }
  return rep;
}

Alternating algebroid_differential(const AlgebroidSpec& A, const Alternating& c, bool with_rep) {
  if (with_rep && !A.rep) throw MissingRepresentation("algebroid has no representation");
  if (c.dim() != A.rank) throw ShapeMismatch("cochain rank differs from algebroid rank");
  int k = c.degree();
  if (k + 1 > A.rank) throw DegreeError("cochain degree already maximal");
  std::vector<VectorField> rho;
  for (int a = 0; a < A.rank; ++a) rho.push_back(A.rho(A.frame_section(a)));

  Alternating out(A.rank, k + 1);
  for (const auto& idx : increasing_tuples(A.rank, k + 1)) {
    Expr sum;
    for (int i = 0; i <= k; ++i) {
      Index rest = idx;
      int a = idx[u(i)];
      rest.erase(rest.begin() + i);
      Expr v = c.get(rest);
      Expr t = apply(rho[u(a)], v);
      if (with_rep && !v.is_zero()) t += (*A.rep)[u(a)] * v;
      sum += i % 2 == 0 ? t : -t;
    }
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        const Section& br = A.bracket[u(idx[u(i)])][u(idx[u(j)])];
        Index rest = idx;
        rest.erase(rest.begin() + j);
        rest.erase(rest.begin() + i);
        Expr t;
        for (int e = 0; e < A.rank; ++e) {
          if (br[u(e)].is_zero()) continue;
          Index full{e};
          full.insert(full.end(), rest.begin(), rest.end());
          Expr v = c.get(full);
          if (!v.is_zero()) t += br[u(e)] * v;
        }
        sum += (i + j) % 2 == 0 ? t : -t;
      }
    out.set(idx, sum);
  }
  return out;
}

AlgebroidSpec gauge_algebroid(const Chart& ch) {
  int n = ch.dim();
  AlgebroidSpec A(ch, n + 1);
  for (int i = 0; i < n; ++i) {
    A.anchor[u(i)][u(i)] = Expr(1);
    A.frame_names[u(i)] = "d" + ch.var(i);
  }
  A.frame_names[u(n)] = "1";
  std::vector<Expr> phi(u(n + 1));
  phi[u(n)] = Expr(1);
  A.rep = phi;
  return A;
}

AlgebroidSpec cotangent_algebroid(const Multivector& pi) {
  if (pi.degree() != 2) throw DegreeError("cotangent algebroid needs a bivector");
  const Chart& ch = pi.chart;
  int n = ch.dim();
  AlgebroidSpec A(ch, n);
  for (int a = 0; a < n; ++a) {
    A.frame_names[u(a)] = "d" + ch.var(a);
    for (int j = 0; j < n; ++j) A.anchor[u(j)][u(a)] = pi.get({a, j});
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Section s(u(n));
      Expr p = pi.get({a, b});
      for (int c = 0; c < n; ++c) s[u(c)] = differentiate(p, ch.var(c));
      A.set_bracket(a, b, s);
    }
  return A;
}

AlgebroidSpec jet_algebroid(const Multiderivation& j) {
  if (j.degree() != 2) throw DegreeError("jet algebroid needs a biderivation");
  const Chart& ch = j.chart();
  int n = ch.dim();
  AlgebroidSpec A(ch, n + 1);
  std::vector<JetSection> frame;
  std::vector<Derivation> sharps;
  for (int a = 0; a <= n; ++a) {
    std::vector<Expr> v(u(n + 1));
    v[u(a)] = Expr(1);
    frame.push_back(JetSection::from_frame(ch, v));
    sharps.push_back(sharp(j, frame.back()));
    A.frame_names[u(a)] = a < n ? "j" + ch.var(a) : "j1";
    for (int i = 0; i < n; ++i) A.anchor[u(i)][u(a)] = sharps.back().X[i];
  }
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      AtiyahForm psi = AtiyahForm::from_jet(frame[u(a)]), chi = AtiyahForm::from_jet(frame[u(b)]);
      Expr jab = evaluate(j, {frame[u(a)], frame[u(b)]});
      AtiyahForm br = lie_derivative(sharps[u(a)], chi) - lie_derivative(sharps[u(b)], psi) -
                      d_D(AtiyahForm::section(ch, jab));
      A.set_bracket(a, b, br.as_jet().frame());
    }
  return A;
}

Form spencer_D(const AlgebroidSpec& A, const SpencerData& S, const Section& s) {
  Form out(A.base, S.k);
  for (int a = 0; a < A.rank; ++a) {
    if (s[u(a)].is_zero()) continue;
    out += s[u(a)] * S.D[u(a)];
    out += wedge(ext_d(A.base, s[u(a)]), S.ell[u(a)]);
  }
  return out;
}

Form spencer_ell(const AlgebroidSpec& A, const SpencerData& S, const Section& s) {
  Form out(A.base, S.k - 1);
  for (int a = 0; a < A.rank; ++a)
    if (!s[u(a)].is_zero()) out += s[u(a)] * S.ell[u(a)];
  return out;
}

Report verify_spencer(const AlgebroidSpec& A, const SpencerData& S, std::uint64_t seed) {
  if (static_cast<int>(S.D.size()) != A.rank || static_cast<int>(S.ell.size()) != A.rank)
    throw ShapeMismatch("Spencer data rank differs from algebroid rank");
  Report rep;
  rep.kind = "spencer";
  rep.seed = seed;

  std::vector<std::pair<Section, Section>> pairs;
  for (int a = 0; a < A.rank; ++a)
    for (int b = 0; b < A.rank; ++b) pairs.emplace_back(A.frame_section(a), A.frame_section(b));
  RandomPoly rng(seed);
  for (int i = 0; i < 5; ++i) {
    Section s = random_section(A, rng);
    Section t = random_section(A, rng);
    pairs.emplace_back(s, t);
  }

  std::vector<Expr> r1, r2, r3;
  for (const auto& [s, t] : pairs) {
    VectorField rs = A.rho(s), rt = A.rho(t);
    Section st = section_bracket(A, s, t);
    Form Ds = spencer_D(A, S, s), Dt = spencer_D(A, S, t);
    Form ls = spencer_ell(A, S, s), lt = spencer_ell(A, S, t);
    append(r1, residuals(lie_derivative(rs, Dt) - lie_derivative(rt, Ds) - spencer_D(A, S, st)));
    append(r2, residuals(lie_derivative(rs, lt) - interior(rt, Ds) - spencer_ell(A, S, st)));
    if (S.k >= 2) append(r3, residuals(interior(rs, lt) + interior(rt, ls)));
  }
  rep.axioms.push_back(check_zero("compatibility-D", "L_{rho a} D(b) - L_{rho b} D(a) - D([a,b]) = 0", r1, seed));
  rep.axioms.push_back(check_zero("compatibility-l", "L_{rho a} l(b) - i_{rho b} D(a) - l([a,b]) = 0", r2, seed));
  rep.axioms.push_back(check_zero("symmetry-l", "i_{rho a} l(b) + i_{rho b} l(a) = 0", r3, seed));
  if (S.k < 2) rep.notes.push_back("symmetry-l is vacuous for k = 1");
  return rep;
}

SpencerData spencer_from_nijenhuis(const Tensor11& n) {
  SpencerData S;
  S.k = 2;
  for (int a = 0; a < n.dim(); ++a) {
    Form l = dual_apply(n, Form::coordinate(n.chart, a));
    S.ell.push_back(l);
    S.D.push_back(ext_d(l));
  }
  return S;
}

Section apply_derivation(const AlgebroidSpec& A, const AlgebroidDerivation& d, const Section& s) {
  Section out = A.zero_section();
  for (int a = 0; a < A.rank; ++a) {
    if (s[u(a)].is_zero()) continue;
    out = out + s[u(a)] * d.frame_values[u(a)];
    out[u(a)] += apply(d.symbol, s[u(a)]);
  }
  return out;
}

Report verify_algebroid_derivation(const AlgebroidSpec& A, const AlgebroidDerivation& d, std::uint64_t seed) {
  if (static_cast<int>(d.frame_values.size()) != A.rank) throw ShapeMismatch("derivation rank differs");
  Report rep;
  rep.kind = "algebroid-derivation";
  rep.seed = seed;
  std::vector<Expr> leibniz, symbol;
  for (int a = 0; a < A.rank; ++a) {
    auto ea = A.frame_section(a);
    append(symbol, residuals(lie_bracket(d.symbol, A.rho(ea)) - A.rho(apply_derivation(A, d, ea))));
    for (int b = a + 1; b < A.rank; ++b) {
      auto eb = A.frame_section(b);
      Section r = apply_derivation(A, d, section_bracket(A, ea, eb)) -
                  section_bracket(A, apply_derivation(A, d, ea), eb) -
                  section_bracket(A, ea, apply_derivation(A, d, eb));
      append(leibniz, nonzero(r));
    }
  }
  rep.axioms.push_back(check_zero("bracket-derivation", "delta[a,b] = [delta a, b] + [a, delta b]", leibniz, seed));
  rep.axioms.push_back(check_zero("symbol", "[sigma(delta), rho a] = rho(delta a)", symbol, seed));
  return rep;
}

AlgebroidDerivation homogeneity_derivation(const Multivector& pi, const VectorField& zeta) {
  require_same_chart(pi.chart, zeta.chart, "homogeneity_derivation");
  const Chart& ch = pi.chart;
  int n = ch.dim();
  AlgebroidDerivation d;
  d.symbol = zeta;
  for (int a = 0; a < n; ++a) {
    Section s(u(n));
    for (int c = 0; c < n; ++c) s[u(c)] = differentiate(zeta[a], ch.var(c));
    s[u(a)] -= Expr(1);
    d.frame_values.push_back(s);
  }
  return d;
}

Report check_homogeneity_derivation(const Multivector& pi, const VectorField& zeta, std::uint64_t seed) {
  Report rep = verify_algebroid_derivation(cotangent_algebroid(pi), homogeneity_derivation(pi, zeta), seed);
  rep.kind = "homogeneity-derivation";
  auto direct = check_zero("homogeneous", "L_zeta pi + pi = 0", residuals(lie_derivative(zeta, pi) + pi), seed);
  bool agree = (direct.outcome() == Verdict::Pass) == (rep.overall() == Verdict::Pass);
  rep.axioms.push_back(direct);
  if (!agree) rep.notes.push_back("derivation verdict and direct homogeneity verdict disagree");
  return rep;
}

}  // namespace lbc
