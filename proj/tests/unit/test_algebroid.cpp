#include <gtest/gtest.h>

#include "lbc/algebroid.hpp"
#include "lbc/errors.hpp"
#include "lbc/random.hpp"
#include "support/helpers.hpp"

using namespace lbc;
using namespace lbc::test;

namespace {

const PolyShape kShape{2, 2, 3, 0.3};

Alternating random_cochain(RandomPoly& rp, const Chart& ch, int rank, int k) {
  Alternating c(rank, k);
  for (const auto& idx : increasing_tuples(rank, k)) c.set(idx, rp.poly(ch.vars(), kShape));
  return c;
}

Multivector so3_dual(const Chart& c) {
  return mv(c, 2, {{{0, 1}, "z"}, {{1, 2}, "x"}, {{0, 2}, "-y"}});
}

Multiderivation contact_jacobi(const Chart& c3) {
  return Multiderivation::from_parts(mv(c3, 2, {{{0, 1}, "1"}, {{1, 2}, "-y"}}), mv(c3, 1, {{{2}, "1"}}));
}

}  // namespace

TEST(GaugeAlgebroid, PassesAndDifferentiatesSections) {
  Chart c2 = chart({"x", "y"});
  EXPECT_TRUE(verify_algebroid(gauge_algebroid(c2)).passed());
  Chart c3 = chart({"x", "y", "z"});
  AlgebroidSpec g = gauge_algebroid(c3);
  Alternating l(4, 0);
  l.set({}, E("z"));
  Alternating dl = algebroid_differential(g, l, true);
  EXPECT_EXPR_EQ(dl.get({2}), E("1"));
  EXPECT_EXPR_EQ(dl.get({3}), E("z"));
  EXPECT_TRUE(dl.get({0}).is_zero());
}

TEST(GaugeAlgebroid, DifferentialSquaresToZero) {
  Chart c = chart({"x", "y", "z"});
  AlgebroidSpec g = gauge_algebroid(c);
  RandomPoly rp(7);
  for (int k = 0; k <= 2; ++k) {
    Alternating a = random_cochain(rp, c, 4, k);
    EXPECT_TRUE(algebroid_differential(g, algebroid_differential(g, a, true), true).is_zero()) << k;
  }
}

TEST(AlgebroidDifferential, TrivialRepOnAbelian) {
  Chart c = chart({"x", "y"});
  AlgebroidSpec a(c, 2);
  a.anchor = {{E("1"), E("y")}, {E("0"), E("x")}};
  Alternating f(2, 0);
  f.set({}, E("x^2*y"));
  Alternating df = algebroid_differential(a, f, false);
  EXPECT_EXPR_EQ(df.get({0}), E("2*x*y"));
  EXPECT_EXPR_EQ(df.get({1}), E("y*2*x*y + x*x^2"));
  EXPECT_THROW(algebroid_differential(a, f, true), MissingRepresentation);
}

TEST(CotangentAlgebroid, Examples) {
  Chart c2 = chart({"x", "y"});
  EXPECT_TRUE(verify_algebroid(cotangent_algebroid(mv(c2, 2, {{{0, 1}, "1"}}))).passed());

  AlgebroidSpec zero = cotangent_algebroid(mv(c2, 2, {}));
  EXPECT_TRUE(residuals(zero.rho(zero.frame_section(0))).empty());
  EXPECT_TRUE(zero.bracket[0][1][0].is_zero() && zero.bracket[0][1][1].is_zero());

  AlgebroidSpec good = cotangent_algebroid(mv(c2, 2, {{{0, 1}, "x"}}));
  EXPECT_TRUE(verify_algebroid(good).passed());
  AlgebroidSpec corrupted = good;
  corrupted.set_bracket(0, 1, {E("1"), E("x")});
  Report r = verify_algebroid(corrupted);
  EXPECT_EQ(r.overall(), Verdict::Fail);
  EXPECT_EQ(r.verdict_of("anchor"), Verdict::Fail);
  EXPECT_FALSE(r.find("anchor")->residual.empty());
}

TEST(CotangentAlgebroid, AnchorIsSharp) {
  Chart c = chart({"x", "y", "z"});
  Multivector pi = so3_dual(c);
  AlgebroidSpec a = cotangent_algebroid(pi);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(a.rho(a.frame_section(i)), sharp(pi, Form::coordinate(c, i)));
  // frame bracket agrees with the Koszul bracket
  EXPECT_EQ(Form(c, [&] {
              Alternating s(3, 1);
              for (int k = 0; k < 3; ++k) s.set({k}, a.bracket[0][1][static_cast<std::size_t>(k)]);
              return s;
            }()),
            koszul_bracket(pi, Form::coordinate(c, 0), Form::coordinate(c, 1)));
}

TEST(CotangentAlgebroid, NonPoissonFails) {
  Chart c = chart({"x", "y", "z"});
  Report r = verify_algebroid(cotangent_algebroid(mv(c, 2, {{{0, 1}, "x"}, {{1, 2}, "y"}})));
  EXPECT_EQ(r.overall(), Verdict::Fail);
}

TEST(CotangentAlgebroid, LiePoissonDifferentialSquaresToZero) {
  Chart c = chart({"x", "y", "z"});
  AlgebroidSpec a = cotangent_algebroid(so3_dual(c));
  EXPECT_TRUE(verify_algebroid(a).passed());
  RandomPoly rp(13);
  for (int k = 0; k <= 1; ++k) {
    Alternating w = random_cochain(rp, c, 3, k);
    EXPECT_TRUE(algebroid_differential(a, algebroid_differential(a, w, false), false).is_zero());
  }
}

TEST(JetAlgebroid, ContactJacobiPasses) {
  Chart c = chart({"x", "y", "z"});
  AlgebroidSpec a = jet_algebroid(contact_jacobi(c));
  Report r = verify_algebroid(a);
  EXPECT_TRUE(r.passed()) << r.axioms[0].residual << " " << r.axioms[1].residual;
  RandomPoly rp(19);
  Alternating w = random_cochain(rp, c, 4, 1);
  EXPECT_TRUE(algebroid_differential(a, algebroid_differential(a, w, false), false).is_zero());
}

TEST(JetAlgebroid, BracketOfJetsIsJetOfBracket) {
  // [j1 f, j1 g]_J = j1 {f, g}
  Chart c = chart({"x", "y", "z"});
  Multiderivation j = contact_jacobi(c);
  AlgebroidSpec a = jet_algebroid(j);
  RandomPoly rp(21);
  for (int t = 0; t < 3; ++t) {
    Expr f = rp.poly(c.vars(), kShape), g = rp.poly(c.vars(), kShape);
    Section jf = jet(c, f).frame(), jg = jet(c, g).frame();
    EXPECT_EQ(section_bracket(a, jf, jg), jet(c, apply_multiderivation(j, {f, g})).frame());
  }
}

TEST(JetAlgebroid, NonJacobiFails) {
  Chart c = chart({"x", "y", "z"});
  Multiderivation bad = Multiderivation::from_parts(mv(c, 2, {{{0, 1}, "1"}}), mv(c, 1, {{{2}, "1"}}));
  EXPECT_EQ(verify_algebroid(jet_algebroid(bad)).overall(), Verdict::Fail);
}

TEST(Spencer, SymplecticIdentityPair) {
  Chart c = chart({"x", "y"});
  AlgebroidSpec a = cotangent_algebroid(mv(c, 2, {{{0, 1}, "1"}}));
  Report r = verify_spencer(a, spencer_from_nijenhuis(Tensor11::identity(c)));
  EXPECT_TRUE(r.passed());
}

TEST(Spencer, IdentityPairOnNonConstantPoisson) {
  Chart c = chart({"x", "y", "z"});
  Report r = verify_spencer(cotangent_algebroid(so3_dual(c)), spencer_from_nijenhuis(Tensor11::identity(c)));
  EXPECT_TRUE(r.passed());
}

TEST(Spencer, ComplexModelPasses) {
  Chart c = chart({"x1", "y1", "x2", "y2"});
  Multivector pi = mv(c, 2, {{{0, 2}, "1/4"}, {{1, 3}, "-1/4"}});
  Tensor11 j = t11(c, {{"0", "-1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "0", "-1"}, {"0", "0", "1", "0"}});
  EXPECT_TRUE(verify_spencer(cotangent_algebroid(pi), spencer_from_nijenhuis(j)).passed());
}

TEST(Spencer, IncompatiblePairFails) {
  Chart c = chart({"x", "y"});
  AlgebroidSpec a = cotangent_algebroid(mv(c, 2, {{{0, 1}, "1"}}));
  Report r = verify_spencer(a, spencer_from_nijenhuis(t11(c, {{"0", "x"}, {"0", "0"}})));
  EXPECT_EQ(r.overall(), Verdict::Fail);
  EXPECT_EQ(r.verdict_of("symmetry-l"), Verdict::Fail);
}

TEST(Spencer, ExtensionRule) {
  Chart c = chart({"x", "y"});
  AlgebroidSpec a = cotangent_algebroid(mv(c, 2, {{{0, 1}, "1"}}));
  SpencerData s = spencer_from_nijenhuis(Tensor11::identity(c));
  Section sec{E("x*y"), E("x^2")};
  Form alpha = form(c, 1, {{{0}, "x*y"}, {{1}, "x^2"}});
  EXPECT_EQ(spencer_D(a, s, sec), ext_d(alpha));
  EXPECT_EQ(spencer_ell(a, s, sec), alpha);
}

TEST(HomogeneityDerivation, VerdictMatchesDirectTest) {
  struct Case {
    std::vector<std::string> vars;
    Multivector pi;
    std::vector<std::string> zeta;
    bool homogeneous;
  };
  Chart c2 = chart({"x", "y"});
  Chart c3 = chart({"x", "y", "z"});
  std::vector<Case> cases = {
      {{"x", "y"}, mv(c2, 2, {{{0, 1}, "1"}}), {"x/2", "y/2"}, true},
      {{"x", "y"}, mv(c2, 2, {{{0, 1}, "1"}}), {"x", "0"}, true},
      {{"x", "y"}, mv(c2, 2, {{{0, 1}, "1"}}), {"x", "y"}, false},
      {{"x", "y"}, mv(c2, 2, {{{0, 1}, "x"}}), {"0", "y"}, true},
      {{"x", "y"}, mv(c2, 2, {{{0, 1}, "x"}}), {"x", "0"}, false},
      {{"x", "y", "z"}, so3_dual(c3), {"x", "y", "z"}, true},
      {{"x", "y", "z"}, so3_dual(c3), {"x", "0", "0"}, false},
  };
  for (const auto& k : cases) {
    VectorField zeta = vf(k.pi.chart, k.zeta);
    Report deriv = verify_algebroid_derivation(cotangent_algebroid(k.pi), homogeneity_derivation(k.pi, zeta));
    bool direct = all_zero(residuals(lie_derivative(zeta, k.pi) + k.pi));
    EXPECT_EQ(deriv.passed(), direct) << to_string(k.pi) << " zeta " << to_string(zeta);
    EXPECT_EQ(direct, k.homogeneous) << to_string(k.pi);
    Report both = check_homogeneity_derivation(k.pi, zeta);
    EXPECT_EQ(both.passed(), k.homogeneous);
    EXPECT_TRUE(both.notes.empty());
  }
}

TEST(AlgebroidDerivation, ExtensionRule) {
  Chart c = chart({"x", "y"});
  Multivector pi = mv(c, 2, {{{0, 1}, "1"}});
  AlgebroidSpec a = cotangent_algebroid(pi);
  AlgebroidDerivation d = homogeneity_derivation(pi, vf(c, {"x", "0"}));
  // delta(y dx) = L_{x d_x}(y dx) - y dx = y dx - y dx = 0
  Section s = apply_derivation(a, d, {E("y"), E("0")});
  EXPECT_TRUE(s[0].is_zero() && s[1].is_zero());
}
