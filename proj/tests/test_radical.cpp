#include "support.hpp"

#include <gtest/gtest.h>

using namespace testing_support;

namespace {

TEST(Eliminate, Examples) {
  Example ex;
  auto c = ex.ctx;
  auto s = eliminate({ex.g1, ex.g2}, ex.f, 0, 0);
  ASSERT_EQ(s.generators.size(), 2u);
  EXPECT_TRUE(s.generators[0].isZero());
  EXPECT_EQ(s.generators[1], V(c, {"2*x1^2"}));
  EXPECT_EQ(s.target, V(c, {"-x1^2 - x1*x2"}));

  auto t = eliminate({ex.g1, ex.g2}, ex.f, 1, 0);
  EXPECT_EQ(t.generators[0], V(c, {"-2*x1^2"}));
  EXPECT_TRUE(t.generators[1].isZero());
  EXPECT_EQ(t.target, V(c, {"-x1^2 + x1*x2"}));

  // f_l = 0 and g_kj = 0 off the pivot
  auto u = eliminate({V(c, {"0", "x2"})}, V(c, {"x1", "0"}), 0, 1);
  EXPECT_EQ(u.target, V(c, {"x1*x2"}));

  EXPECT_THROW(eliminate({ex.g1}, ex.f, 1, 0), std::out_of_range);
  EXPECT_THROW(eliminate({ex.g1}, ex.f, 0, 2), std::out_of_range);
  EXPECT_THROW(eliminate({V(c, {"x1"})}, V(c, {"x1"}), 0, 0), std::invalid_argument);
}

TEST(EntryIdeal, Examples) {
  Example ex;
  auto c = ex.ctx;
  auto I = entryIdeal(ex.N);
  EXPECT_EQ(I.generators().size(), 4u);
  EXPECT_EQ(I.groebnerBasis(), (std::vector<ModVec>{V(c, {"x1"}), V(c, {"x2"})}));
  auto J = entryIdeal(Submodule(c, 2, {V(c, {"x1^2", "x1*x2"})}));
  EXPECT_TRUE(moduleEquals(J, Submodule::ideal(c, {P(c, "x1^2"), P(c, "x1*x2")})));
  EXPECT_TRUE(entryIdeal(Submodule(c, 2, {})).isZero());
}

TEST(SelfCert, Examples) {
  auto c = Context::make(2);
  for (ModVec h : {V(c, {"x1", "x2"}), V(c, {"1", "0"}), V(c, {"x1", "0"}), V(c, {"0", "0"})}) {
    TensorCert cert = selfCert(h);
    Verdict v = verifyTensor(cert, selfModule(h));
    EXPECT_TRUE(v) << v.reason;
  }
  ModVec h = V(c, {"x1", "0"});
  EXPECT_TRUE(verifyTensor(selfCert(h), Submodule(c, 2, {V(c, {"x1^2", "0"})})));
}

TEST(SquareCertToTensor, Examples) {
  auto c = Context::make(2);
  {
    auto I = Submodule::ideal(c, {P(c, "x1^2")});
    ModVec f = V(c, {"x1", "0"});
    TensorCert t = squareCertToTensor({P(c, "x1"), 1, {}, std::nullopt}, I, f);
    EXPECT_EQ(t.f, V(c, {"x1^2", "0"}));
    EXPECT_TRUE(verifyTensor(t, idealTimes(I, f)));
  }
  {
    auto I = Submodule::ideal(c, {P(c, "x1^2 + x2^2")});
    ModVec f = V(c, {"x2", "x1"});
    TensorCert t = squareCertToTensor({P(c, "x2"), 1, {P(c, "x1")}, std::nullopt}, I, f);
    EXPECT_EQ(t.f, P(c, "x2") * f);
    ASSERT_EQ(t.squares.size(), 1u);
    EXPECT_EQ(t.squares[0], P(c, "x1") * f);
    EXPECT_TRUE(verifyTensor(t, idealTimes(I, f)));
  }
  {
    auto I = Submodule::ideal(c, {P(c, "x1 - 1")});
    EXPECT_THROW(squareCertToTensor({P(c, "x1"), 1, {}, std::nullopt}, I, V(c, {"x1"})), std::invalid_argument);
  }
}

TEST(ChainSearch, WorkedExample) {
  Example ex;
  SearchConfig cfg;
  cfg.degreeBound = 1;
  cfg.maxChainDepth = 2;
  SearchResult r = chainSearch(ex.N, ex.f, cfg);
  ASSERT_TRUE(std::holds_alternative<ChainCert>(r)) << std::get<SearchFailure>(r).reason;
  const auto& cert = std::get<ChainCert>(r);
  EXPECT_LE(cert.depth(), 2u);
  EXPECT_TRUE(verifyChain(cert, ex.N, ex.f));
  logCert("chainSearch worked example", ex.f, ex.N);
}

TEST(ChainSearch, DescentWithoutShortcuts) {
  Example ex;
  SearchConfig cfg;
  cfg.shortcuts = false;
  SearchResult r = chainSearch(ex.N, ex.f, cfg);
  ASSERT_TRUE(std::holds_alternative<ChainCert>(r)) << std::get<SearchFailure>(r).reason;
  EXPECT_TRUE(verifyChain(std::get<ChainCert>(r), ex.N, ex.f));
  logCert("chainSearch descent", ex.f, ex.N);
}

TEST(ChainSearch, PlainMembershipAndFailure) {
  Example ex;
  SearchResult r = chainSearch(ex.N, ex.g1);
  ASSERT_TRUE(std::holds_alternative<ChainCert>(r));
  EXPECT_EQ(std::get<ChainCert>(r).depth(), 0u);

  auto c = ex.ctx;
  Submodule N(c, 2, {V(c, {"x1", "0"})});
  SearchResult bad = chainSearch(N, V(c, {"0", "x1"}));
  ASSERT_TRUE(std::holds_alternative<SearchFailure>(bad));
  const auto& fail = std::get<SearchFailure>(bad);
  ASSERT_TRUE(fail.counterexample);
  EXPECT_TRUE(inZeroSet(*fail.counterexample, N));
}

TEST(ChainSearch, DepthCapReported) {
  Example ex;
  SearchConfig cfg;
  cfg.shortcuts = false;
  cfg.maxChainDepth = 1;
  SearchResult r = chainSearch(ex.N, ex.f, cfg);
  if (auto* fail = std::get_if<SearchFailure>(&r)) {
    EXPECT_NE(fail->reason.find("depth"), std::string::npos) << fail->reason;
  } else {
    EXPECT_LE(std::get<ChainCert>(r).depth(), 1u);
  }
}

TEST(RadicalProperty, EliminationIdentities) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 100; ++t) {
    auto inst = randomInstance(rng, RandomSpec{3, 2, 3, 3, 2, 3});
    std::size_t k = t % inst.gens.size(), l = t % inst.rank;
    auto s = eliminate(inst.gens, inst.f, k, l);
    const Poly& gkl = inst.gens[k][l];
    EXPECT_EQ(embedAt(s.target, l), gkl * inst.f - inst.f[l] * inst.gens[k]);
    for (std::size_t i = 0; i < inst.gens.size(); ++i)
      EXPECT_EQ(embedAt(s.generators[i], l), gkl * inst.gens[i] - inst.gens[i][l] * inst.gens[k]);
  }
}

TEST(RadicalProperty, KernelTransport) {
  std::mt19937_64 rng(62);
  std::size_t transported = 0;
  for (int t = 0; t < 60; ++t) {
    auto inst = randomInstance(rng, RandomSpec{3, 2, 3, 3, 2, 3});
    std::size_t k = t % inst.gens.size(), l = (t / 3) % inst.rank;
    auto s = eliminate(inst.gens, inst.f, k, l);
    Submodule original(inst.ctx, inst.rank, inst.gens);
    Submodule derived(inst.ctx, inst.rank - 1, s.generators);
    for (int p = 0; p < 10; ++p) {
      Point a = randomPoint(rng, inst.ctx->numVars());
      for (const auto& v : kernelAt(a, derived)) {
        auto u = transportKernel(inst.gens, k, l, a, v);
        EXPECT_TRUE(inZeroSet({a, u}, original));
        ++transported;
      }
    }
  }
  EXPECT_GT(transported, 0u);
}

TEST(RadicalProperty, SearchRoundTrip) {
  std::mt19937_64 rng(63);
  SearchConfig cfg;
  cfg.degreeBound = 1;
  cfg.kMax = 2;
  cfg.sampling.count = 200;
  int found = 0;
  for (int t = 0; t < 12; ++t) {
    auto c = Context::make(2);
    std::size_t n = 1 + t % 2;
    std::vector<ModVec> gens{randomVec(rng, c, n, 1, 2)};
    if (t % 3 == 0) gens.push_back(randomVec(rng, c, n, 1, 2));
    Submodule N(c, n, gens);
    // targets in the real radical by construction: members plus a generator factor
    ModVec f = P(c, "x1 + 2") * gens[0];
    SearchResult r = chainSearch(N, f, cfg);
    ASSERT_TRUE(std::holds_alternative<ChainCert>(r)) << std::get<SearchFailure>(r).reason;
    EXPECT_TRUE(verifyChain(std::get<ChainCert>(r), N, f));
    logCert("search round trip", f, N);
    ++found;
  }
  EXPECT_EQ(found, 12);
}

TEST(RadicalProperty, SelfCertAlwaysValid) {
  std::mt19937_64 rng(64);
  for (int t = 0; t < 30; ++t) {
    auto c = Context::make(1 + t % 3);
    ModVec h = randomVec(rng, c, 1 + t % 3, 2, 3);
    EXPECT_TRUE(verifyTensor(selfCert(h), selfModule(h)));
  }
}

}  // namespace
