#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lbc/errors.hpp"
#include "lbc/random.hpp"
#include "support/helpers.hpp"

using namespace lbc;
using lbc::test::E;

TEST(ExprNormalize, RingIdentityCancels) {
  Expr x = Expr::var("x");
  EXPECT_TRUE((x * (x + 1) - pow(x, 2) - x).is_zero());
}

TEST(ExprNormalize, LaurentCancellation) {
  Expr r = Expr::var("r");
  EXPECT_EQ(r * pow(r, -1), Expr(1));
}

TEST(ExprNormalize, PrimTreatedAsAtom) {
  // Brute force with s standing for sin(x): s^2 + s(1 - s) - s = 0.
  Expr s = sin(Expr::var("x"));
  EXPECT_TRUE((pow(s, 2) + s * (1 - s) - s).is_zero());
}

TEST(ExprNormalize, Idempotent) {
  RandomPoly rp(7);
  for (int i = 0; i < 50; ++i) {
    Expr e = rp.poly({"x", "y", "z"}) * sin(rp.poly({"x", "y"})) + rp.poly({"x"});
    EXPECT_EQ(normalize(e), e);
    EXPECT_EQ(normalize(normalize(e)), normalize(e));
  }
}

TEST(ExprNormalize, NegativePowerOfZeroThrows) {
  Expr x = Expr::var("x");
  EXPECT_THROW(pow(x - x, -1), DivisionByZero);
  EXPECT_THROW(pow(x + 1, -2), NonLaurent);
}

TEST(ExprNormalize, PrimOfZeroFolds) {
  EXPECT_EQ(exp(Expr(0)), Expr(1));
  EXPECT_EQ(cos(Expr(0)), Expr(1));
  EXPECT_TRUE(sin(Expr(0)).is_zero());
}

TEST(ExprKind, ViewOfCanonicalForm) {
  EXPECT_EQ(E("3").kind(), Expr::Kind::Const);
  EXPECT_EQ(E("x").kind(), Expr::Kind::Var);
  EXPECT_EQ(E("x + y").kind(), Expr::Kind::Sum);
  EXPECT_EQ(E("2*x").kind(), Expr::Kind::Product);
  EXPECT_EQ(E("x^-1").kind(), Expr::Kind::IntPow);
  EXPECT_EQ(E("sin(x)").kind(), Expr::Kind::Prim);
}

TEST(ExprDifferentiate, Examples) {
  EXPECT_EQ(differentiate(E("x^2*y"), "x"), E("2*x*y"));
  EXPECT_EQ(differentiate(E("r^-1"), "r"), E("-r^-2"));
  EXPECT_EQ(differentiate(E("sin(x*y)"), "x"), E("y*cos(x*y)"));
}

TEST(ExprDifferentiate, SinOfProductMatchesFiniteDifference) {
  Expr f = E("sin(x*y)");
  Expr df = differentiate(f, "x");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int i = 0; i < 10; ++i) {
    double x = d(rng), y = d(rng), h = 1e-5;
    double fd = (eval(f, {{"x", x + h}, {"y", y}}) - eval(f, {{"x", x - h}, {"y", y}})) / (2 * h);
    double ex = eval(df, {{"x", x}, {"y", y}});
    EXPECT_NEAR(fd, ex, 1e-6 * std::max(1.0, std::fabs(ex)));
  }
}

TEST(ExprDifferentiate, FiniteDifferenceOnRandomExpressions) {
  RandomPoly rp(3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.3, 1.5);
  for (int i = 0; i < 30; ++i) {
    Expr e = rp.poly({"x", "y"}) * exp(rp.poly({"x"}, {1, 2, 1})) + cos(rp.poly({"y", "x"})) * pow(Expr::var("x"), -1);
    Expr de = differentiate(e, "x");
    double x = d(rng), y = d(rng), h = 1e-6;
    double fd = (eval(e, {{"x", x + h}, {"y", y}}) - eval(e, {{"x", x - h}, {"y", y}})) / (2 * h);
    double ex = eval(de, {{"x", x}, {"y", y}});
    EXPECT_LE(std::fabs(fd - ex), 1e-6 * std::max(1.0, std::fabs(ex))) << to_string(e);
  }
}

TEST(ExprDifferentiate, PartialsCommute) {
  RandomPoly rp(19);
  for (int i = 0; i < 40; ++i) {
    Expr e = rp.poly({"x", "y", "r"}, {3, 4, 5}) * pow(Expr::var("r"), -2) + sin(rp.poly({"x", "y"}));
    EXPECT_EQ(differentiate(differentiate(e, "x"), "y"), differentiate(differentiate(e, "y"), "x"));
    EXPECT_EQ(differentiate(differentiate(e, "r"), "x"), differentiate(differentiate(e, "x"), "r"));
  }
}

TEST(ExprEval, Examples) {
  EXPECT_DOUBLE_EQ(eval(E("x^2 + y"), {{"x", 2}, {"y", 1}}), 5.0);
  EXPECT_DOUBLE_EQ(eval(E("r^-1"), {{"r", 2}}), 0.5);
  EXPECT_DOUBLE_EQ(eval(E("exp(0)"), {}), 1.0);
}

TEST(ExprEval, Errors) {
  EXPECT_THROW(eval(E("x + y"), {{"x", 1}}), UnboundVariable);
  EXPECT_THROW(eval(E("r^-1"), {{"r", 0}}), DivisionByZero);
}

TEST(ExprEval, RingHomomorphism) {
  RandomPoly rp(23);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int i = 0; i < 40; ++i) {
    Expr a = rp.poly({"x", "y"}), b = rp.poly({"x", "y"}) + sin(Expr::var("x")), c = rp.poly({"y"});
    std::map<std::string, double> pt{{"x", d(rng)}, {"y", d(rng)}};
    double lhs = eval(a * b + c, pt);
    double rhs = eval(a, pt) * eval(b, pt) + eval(c, pt);
    EXPECT_LE(std::fabs(lhs - rhs), 1e-12 * std::max(1.0, std::fabs(rhs)));
  }
}

TEST(ExprZero, Examples) {
  EXPECT_TRUE(is_zero(E("x - x"), 42).zero());
  ZeroVerdict v = is_zero(E("x*y"), 42);
  EXPECT_TRUE(v.nonzero());
  EXPECT_EQ(v.witness.size(), 2U);
  EXPECT_GT(std::fabs(v.value), 1e-7);
}

TEST(ExprZero, PythagoreanIdentityIsUnknown) {
  Expr e = E("sin(x)^2 + cos(x)^2 - 1");
  ZeroVerdict v = is_zero(e, 42);
  EXPECT_TRUE(v.unknown());
  EXPECT_GE(v.samples, 20);
  // Every sampled residual is negligible.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::bernoulli_distribution neg(0.5);
  for (int s = 0; s < 20; ++s) {
    double x = mag(rng);
    if (neg(rng)) x = -x;
    EXPECT_LT(std::fabs(eval(e, {{"x", x}})), 1e-12);
  }
}

TEST(ExprZero, SamplePointsAvoidOrigin) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ZeroVerdict v = is_zero(E("x*y*z + 1"), seed);
    for (const auto& [k, x] : v.witness) {
      EXPECT_GE(std::fabs(x), 0.1);
      EXPECT_LE(std::fabs(x), 2.0);
    }
  }
}

TEST(ExprZero, PolynomialsNeverUnknown) {
  RandomPoly rp(31);
  for (int i = 0; i < 100; ++i) {
    Expr e = rp.poly({"x", "y"}, {4, 4, 1}) * pow(Expr::var("x"), -3) * Expr(Rational(1, 1000000));
    EXPECT_FALSE(is_zero(e, 1).unknown());
  }
}

TEST(ExprPrint, RoundTripsThroughParser) {
  RandomPoly rp(37);
  for (int i = 0; i < 50; ++i) {
    Expr e = rp.poly({"x", "y"}) * pow(Expr::var("y"), -2) + Expr(Rational(3, 7)) * exp(rp.poly({"x"}));
    EXPECT_EQ(E(to_string(e)), e) << to_string(e);
  }
}

TEST(ExprSubstitute, SimultaneousBindings) {
  Expr e = E("x^2*y + sin(x)");
  Expr s = substitute(e, {{"x", E("y")}, {"y", E("x")}});
  EXPECT_EQ(s, E("y^2*x + sin(y)"));
}

TEST(ExprChart, RejectsDuplicates) {
  EXPECT_THROW(Chart("M", {"x", "x"}), ShapeMismatch);
  Chart c("M", {"x", "y", "z"});
  EXPECT_EQ(c.index_of("z").value(), 2);
  EXPECT_FALSE(c.has("r"));
}
