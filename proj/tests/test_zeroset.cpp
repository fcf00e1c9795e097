#include "support.hpp"

#include <gtest/gtest.h>

using namespace testing_support;

namespace {

TEST(ZeroSet, InZeroSet) {
  Example ex;
  EXPECT_TRUE(inZeroSet({{0, 3}, {1, 0}}, ex.N));
  EXPECT_TRUE(inZeroSet({{5, -2}, {0, 0}}, ex.N));
  EXPECT_FALSE(inZeroSet({{1, 0}, {1, 0}}, ex.N));
  EXPECT_THROW(inZeroSet({{1}, {1, 0}}, ex.N), std::invalid_argument);
}

TEST(ZeroSet, KernelAt) {
  Example ex;
  using Basis = std::vector<std::vector<Rational>>;
  EXPECT_EQ(kernelAt(Point{0, 3}, ex.N), (Basis{{1, 0}}));
  EXPECT_TRUE(kernelAt(Point{1, 2}, ex.N).empty());
  EXPECT_EQ(kernelAt(Point{0, 0}, ex.N), (Basis{{1, 0}, {0, 1}}));
}

TEST(ZeroSet, SaturationExamples) {
  Example ex;
  SampleConfig cfg;
  EXPECT_TRUE(saturationTest(ex.f, ex.N, cfg).consistent);
  SaturationResult r = saturationTest(V(ex.ctx, {"0", "1"}), ex.N, cfg);
  ASSERT_FALSE(r.consistent);
  EXPECT_EQ(r.counterexample->a, (Point{0, 0}));
  EXPECT_EQ(r.counterexample->u, (std::vector<Rational>{0, 1}));
  ModVec combo = P(ex.ctx, "x1*x2 - 3") * ex.g1 + P(ex.ctx, "x2^2") * ex.g2;
  EXPECT_TRUE(saturationTest(combo, ex.N, cfg).consistent);
}

TEST(ZeroSet, UserPointsComeFirst) {
  auto c = Context::make(1);
  Submodule I = Submodule::ideal(c, {P(c, "x1^2 - 2/9")});
  SampleConfig cfg;
  cfg.count = 50;
  // x1^2 = 2/9 has no rational zeros, so sampling alone finds none
  EXPECT_TRUE(saturationTest(V(c, {"1"}), I, cfg).consistent);
  Submodule J = Submodule::ideal(c, {P(c, "x1^2 - 4/9")});
  cfg.points = {{Rational(2, 3)}};
  SaturationResult r = saturationTest(V(c, {"1"}), J, cfg);
  ASSERT_FALSE(r.consistent);
  EXPECT_EQ(r.sampleIndex, 0u);
  EXPECT_EQ(r.counterexample->a, (Point{Rational(2, 3)}));
}

TEST(ZeroSetProperty, KernelVectorsAreZeros) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 40; ++t) {
    auto inst = randomInstance(rng);
    Submodule N(inst.ctx, inst.rank, inst.gens);
    SampleConfig cfg;
    cfg.count = 30;
    cfg.seed = t;
    for (const auto& a : samplePoints(inst.ctx->numVars(), cfg))
      for (const auto& u : kernelAt(a, N)) EXPECT_TRUE(inZeroSet({a, u}, N));
  }
}

TEST(ZeroSetProperty, Linearity) {
  Example ex;
  std::mt19937_64 rng(52);
  SampleConfig cfg;
  cfg.count = 200;
  ModVec f2 = ex.g2;
  for (int t = 0; t < 5; ++t) {
    Poly p = randomPoly(rng, ex.ctx, 2, 3), q = randomPoly(rng, ex.ctx, 2, 3);
    EXPECT_TRUE(saturationTest(p * ex.f + q * f2, ex.N, cfg).consistent);
  }
}

TEST(ZeroSetProperty, DeterministicAcrossThreads) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    auto inst = randomInstance(rng);
    Submodule N(inst.ctx, inst.rank, inst.gens);
    SampleConfig one;
    one.count = 300;
    SaturationResult a = saturationTest(inst.f, N, one);
    SaturationResult b = saturationTest(inst.f, N, one);
    SampleConfig many = one;
    many.threads = 4;
    SaturationResult c = saturationTest(inst.f, N, many);
    EXPECT_EQ(a.consistent, b.consistent);
    EXPECT_EQ(a.consistent, c.consistent);
    EXPECT_EQ(a.counterexample, b.counterexample);
    EXPECT_EQ(a.counterexample, c.counterexample);
    EXPECT_EQ(a.sampleIndex, c.sampleIndex);
  }
}

TEST(ZeroSet, SampleOrderStructuredFirst) {
  SampleConfig cfg;
  cfg.count = 40;
  auto pts = samplePoints(2, cfg);
  ASSERT_GE(pts.size(), 5u);
  EXPECT_EQ(pts[0], (Point{0, 0}));
  EXPECT_EQ(pts[1], (Point{1, 0}));
  EXPECT_EQ(pts.size(), 40u);
  for (const auto& p : pts)
    for (const auto& x : p) {
      EXPECT_LE(x, 3);
      EXPECT_GE(x, -3);
      EXPECT_LE(x.get_den(), 8);
    }
}

}  // namespace
