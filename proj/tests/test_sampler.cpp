#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "regres/regular_sampler.hpp"
#include "regres/stats.hpp"

using namespace regres;

namespace {

void expect_regular(const Graph& g, std::size_t d) {
  EXPECT_EQ(g.min_degree(), d);
  EXPECT_EQ(g.max_degree(), d);
}

}  // namespace

TEST(RegularSampler, NamesRoundTrip) {
  for (auto k : {SamplerKind::Sequential, SamplerKind::Hybrid, SamplerKind::PairingRestart, SamplerKind::Auto})
    EXPECT_EQ(parse_sampler_kind(to_string(k)), k);
  EXPECT_ANY_THROW(parse_sampler_kind("mcmc"));
}

TEST(RegularSampler, AutoSwitchesAtLowAcceptance) {
  EXPECT_EQ(resolve_sampler(SamplerKind::Auto, 3), SamplerKind::Sequential);
  EXPECT_EQ(resolve_sampler(SamplerKind::Auto, 20), SamplerKind::PairingRestart);
  EXPECT_EQ(resolve_sampler(SamplerKind::Hybrid, 20), SamplerKind::Hybrid);
  EXPECT_NEAR(expected_accept_rate(3), std::exp(-2.0), 1e-12);
}

TEST(RegularSampler, EveryKindGivesRegularSimpleGraphs) {
  Rng rng(1);
  for (auto k : {SamplerKind::Sequential, SamplerKind::Hybrid, SamplerKind::PairingRestart}) {
    SamplerOptions o;
    o.kind = k;
    for (int t = 0; t < 10; ++t) {
      const auto s = sample_regular(50, 4, rng, o);
      EXPECT_EQ(s.used, k);
      expect_regular(s.graph, 4);
    }
  }
}

TEST(RegularSampler, DenseRegimeUsesPairing) {
  Rng rng(2);
  const auto s = sample_regular(1000, 20, rng);
  EXPECT_EQ(s.used, SamplerKind::PairingRestart);
  expect_regular(s.graph, 20);
}

TEST(RegularSampler, ContainsPlantedGraph) {
  Rng rng(3);
  Graph r(200);
  for (Vertex i = 0; i < 200; i += 2) r.add_edge(i, i + 1);
  // residual degree 3 for exact rejection, 11 for pairing
  for (auto [k, d] : {std::pair{SamplerKind::Sequential, 4}, {SamplerKind::PairingRestart, 12}}) {
    SamplerOptions o;
    o.kind = k;
    const auto s = sample_regular_containing(r, d, rng, o);
    EXPECT_TRUE(is_subgraph(r, s.graph));
    expect_regular(s.graph, d);
  }
}

TEST(RegularSampler, InfeasibleInputsThrow) {
  Rng rng(4);
  EXPECT_ANY_THROW(sample_regular(5, 5, rng));
  EXPECT_ANY_THROW(sample_regular(5, 3, rng));
  Graph r(6);
  r.add_edge(0, 1);
  r.add_edge(0, 2);
  EXPECT_ANY_THROW(sample_regular_containing(r, 1, rng));
}

TEST(RegularSampler, RejectionBudgetExhaustion) {
  Rng rng(5);
  SamplerOptions o;
  o.kind = SamplerKind::Sequential;
  o.max_rejects = 3;
  EXPECT_THROW(sample_regular(400, 12, rng, o), SamplingExhausted);
}

TEST(RegularSampler, PairingIsCloseToUniformOnSmallCase) {
  // Only asymptotically uniform; on (6,3) the bias should still be small.
  const auto support = oracle::regular_graphs(6, 3);
  ASSERT_EQ(support.size(), 70u);
  Rng rng(6);
  SamplerOptions o;
  o.kind = SamplerKind::PairingRestart;
  std::vector<std::uint64_t> counts(support.size(), 0);
  for (int r = 0; r < 14000; ++r) {
    const auto e = sample_regular(6, 3, rng, o).graph.edges();
    const auto it = std::find(support.begin(), support.end(), e);
    ASSERT_NE(it, support.end());
    ++counts[it - support.begin()];
  }
  for (auto c : counts) EXPECT_GT(c, 100u);
}

TEST(Rng, SplitStreamsReplay) {
  const Rng root(42);
  Rng a = root.split(3), b = root.split(3), c = root.split(4);
  EXPECT_EQ(a(), b());
  EXPECT_NE(a(), c());
  Rng x(7);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(x.below(13), 13u);
  const double u = x.uniform01();
  EXPECT_GE(u, 0.0);
  EXPECT_LT(u, 1.0);
}
