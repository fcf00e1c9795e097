#include "support.hpp"

#include <gtest/gtest.h>

using namespace testing_support;

namespace {

TEST(LinearTensorSearch, RediscoversWitnesses) {
  Example ex;
  auto cert = linearTensorSearch(ex.f, ex.N, 1);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(verifyTensor(*cert, ex.N));
  ASSERT_TRUE(cert->witnesses);
  // the returned particular solution is the displayed one
  for (const auto& w : *cert->witnesses) EXPECT_EQ(w.coeff, w.generator == 0 ? ex.r1 : ex.r2);
  logCert("linearTensorSearch bound 1", ex.f, ex.N);
  EXPECT_FALSE(linearTensorSearch(ex.f, ex.N, 0));
}

TEST(LinearTensorSearch, GeneratorAndNotFound) {
  Example ex;
  auto cert = linearTensorSearch(ex.g1, ex.N, 0);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(verifyTensor(*cert, ex.N));
  logCert("linearTensorSearch generator", ex.g1, ex.N);

  auto c = ex.ctx;
  Submodule N(c, 2, {V(c, {"x1", "0"})});
  EXPECT_FALSE(linearTensorSearch(V(c, {"1", "0"}), N, 3));
  SaturationResult r = saturationTest(V(c, {"1", "0"}), N, SampleConfig{});
  ASSERT_FALSE(r.consistent);
  EXPECT_EQ(r.counterexample->a, (Point{0, 0}));
}

TEST(LinearTensorSearch, MonotoneInBound) {
  Example ex;
  for (unsigned b = 1; b <= 3; ++b) {
    auto cert = linearTensorSearch(ex.f, ex.N, b);
    ASSERT_TRUE(cert) << b;
    EXPECT_TRUE(verifyTensor(*cert, ex.N));
  }
}

TEST(SquareSearch, Examples) {
  auto c = Context::make(2);
  auto a = squareSearch(P(c, "x1"), Submodule::ideal(c, {P(c, "x1^2")}), 1, 1, SquareMode::linear);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->k, 1u);
  EXPECT_TRUE(a->squares.empty());

  auto I = Submodule::ideal(c, {P(c, "x1^2 + x2^4")});
  auto b = squareSearch(P(c, "x1"), I, 1, 2, SquareMode::numeric);
  ASSERT_TRUE(b);
  EXPECT_TRUE(verifySquare(*b, I));
  EXPECT_EQ(b->k, 1u);
  Poly s = Poly(c);
  for (const auto& q : b->squares) s = s + q * q;
  EXPECT_EQ(s, P(c, "x2^4"));
  logCert("squareSearch x1 over x1^2+x2^4", *b, I);

  auto L = Submodule::ideal(c, {P(c, "x1 - 1")});
  EXPECT_FALSE(squareSearch(P(c, "x1"), L, 3, 2, SquareMode::numeric));
  auto r = saturationTest(V(c, {"x1"}), L, SampleConfig{});
  ASSERT_FALSE(r.consistent);
  EXPECT_EQ(r.counterexample->a[0], 1);
}

TEST(SquareSearch, LinearModeSkipsSquares) {
  auto c = Context::make(2);
  auto I = Submodule::ideal(c, {P(c, "x1^2 + x2^2")});
  EXPECT_FALSE(squareSearch(P(c, "x1"), I, 2, 2, SquareMode::linear));
  auto cert = squareSearch(P(c, "x1"), I, 2, 2, SquareMode::numeric);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(verifySquare(*cert, I));
  logCert("squareSearch x1 over x1^2+x2^2", *cert, I);
}

TEST(SquareSearch, HigherPower) {
  // x1^3 + x2^2 in the ideal; x1^2 needs x1^4 + x1*(...) so k = 1 with squares
  auto c = Context::make(2);
  auto I = Submodule::ideal(c, {P(c, "x1^4 + x2^2")});
  auto cert = squareSearch(P(c, "x1"), I, 3, 2, SquareMode::numeric);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(verifySquare(*cert, I));
  EXPECT_EQ(cert->k, 2u);
  logCert("squareSearch x1 over x1^4+x2^2", *cert, I);
}

TEST(Gram, Rationalize) {
  EXPECT_EQ(rationalize(0.25, 8), Rational(1, 4));
  EXPECT_EQ(rationalize(0.3333333333, 10), Rational(1, 3));
  EXPECT_EQ(rationalize(-2.5, 4), Rational(-5, 2));
  EXPECT_EQ(rationalize(3.14159265, 7), Rational(22, 7));
}

TEST(Gram, FourSquares) {
  for (int n : {0, 1, 2, 3, 7, 15, 31, 60, 1000, 9999}) {
    auto r = sumOfFourSquares(Integer(n));
    ASSERT_TRUE(r) << n;
    Integer s = 0;
    for (const auto& x : *r) s += x * x;
    EXPECT_EQ(s, n);
  }
}

TEST(Gram, WeightedSquare) {
  auto c = Context::make(1);
  ModVec v = V(c, {"x1", "1"});
  auto sq = weightedSquare(Rational(7, 3), v);
  ASSERT_TRUE(sq);
  MatPoly acc(c, 2);
  for (const auto& s : *sq) acc += tensor(s, s);
  EXPECT_EQ(acc, tensor(v, v).scaled(Rational(7, 3)));
}

TEST(Gram, NumericPassNeverReturnsUnverified) {
  // an instance where f is not in the real radical: any returned squares would be a bug
  auto c = Context::make(2);
  auto I = Submodule::ideal(c, {P(c, "x1^2 - x2^2")});
  EXPECT_FALSE(squareSearch(P(c, "x1 + 1"), I, 2, 2, SquareMode::numeric));
  Example ex;
  EXPECT_FALSE(gramTensorSearch(V(ex.ctx, {"0", "1"}), ex.N, 1));
}

TEST(GramTensorSearch, FindsSquares) {
  // (x1, x2) over the module generated by (x1^2 + x2^2, 0)-style data needs squares
  auto c = Context::make(2);
  Submodule N(c, 1, {V(c, {"x1^2 + x2^2"})});
  auto cert = gramTensorSearch(V(c, {"x1"}), N, 1);
  ASSERT_TRUE(cert);
  EXPECT_FALSE(cert->squares.empty());
  EXPECT_TRUE(verifyTensor(*cert, N));
  logCert("gramTensorSearch", V(c, {"x1"}), N);
}

}  // namespace
