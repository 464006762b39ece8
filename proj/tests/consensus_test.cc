#include "npg/consensus.h"

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

namespace npg {
namespace {

CommSchedule Schedule(Topology topology, int n, int period = 1) {
  CommSchedule s;
  s.topology = topology;
  s.num_agents = n;
  s.period = period;
  return s;
}

TEST(EdgesTest, CompleteGraph) {
  for (int n : {2, 3, 5, 8}) {
    EXPECT_EQ(EdgesAt(Schedule(Topology::kComplete, n), 7).size(),
              static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST(EdgesTest, StaticRingIsTwoRegular) {
  const auto edges = EdgesAt(Schedule(Topology::kStaticRing, 5), 0);
  ASSERT_EQ(edges.size(), 5u);
  std::vector<int> degree(5, 0);
  for (const auto& [a, b] : edges) {
    EXPECT_LT(a, b);
    ++degree[a];
    ++degree[b];
  }
  for (int d : degree) EXPECT_EQ(d, 2);
}

TEST(EdgesTest, TimeVaryingStarVisitsEverySpokeOncePerRotation) {
  CommSchedule s = Schedule(Topology::kTimeVaryingStar, 5, 4);
  s.hub = 2;
  EXPECT_EQ(RotationLength(s), 4);
  for (std::int64_t start : {0, 1, 3, 17}) {
    std::set<Edge> seen;
    for (std::int64_t t = start; t < start + 4; ++t) {
      const auto e = EdgesAt(s, t);
      ASSERT_EQ(e.size(), 1u);
      EXPECT_TRUE(e[0].first == 2 || e[0].second == 2);
      seen.insert(e[0]);
    }
    EXPECT_EQ(seen.size(), 4u);
  }
}

TEST(EdgesTest, TimeVaryingRingRotatesRingEdges) {
  const CommSchedule s = Schedule(Topology::kTimeVaryingRing, 5, 4);
  const auto ring = EdgesAt(Schedule(Topology::kStaticRing, 5), 0);
  for (std::int64_t t = 0; t < 10; ++t) {
    EXPECT_EQ(EdgesAt(s, t), std::vector<Edge>{ring[t % 5]});
  }
}

TEST(ConnectivityTest, WindowRequirements) {
  EXPECT_TRUE(SatisfiesWindowConnectivity(Schedule(Topology::kTimeVaryingStar, 5, 4)));
  EXPECT_FALSE(SatisfiesWindowConnectivity(Schedule(Topology::kTimeVaryingStar, 5, 3)));
  // Any four consecutive ring edges form a spanning path.
  EXPECT_TRUE(SatisfiesWindowConnectivity(Schedule(Topology::kTimeVaryingRing, 5, 4)));
  EXPECT_FALSE(SatisfiesWindowConnectivity(Schedule(Topology::kTimeVaryingRing, 5, 3)));
  EXPECT_TRUE(SatisfiesWindowConnectivity(Schedule(Topology::kStaticStar, 5, 1)));
  EXPECT_TRUE(SatisfiesWindowConnectivity(Schedule(Topology::kComplete, 3, 1)));
}

TEST(WeightsTest, SourceRowAndIsolatedAgentsAreUnitRows) {
  const CommSchedule s = Schedule(Topology::kTimeVaryingStar, 4);
  const WeightMatrix w = BuildWeights(s, 0, 0);  // edge (0, 1)
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == 1) continue;
      EXPECT_EQ(w(i, j), i == j ? 1.0 : 0.0) << i << "," << j;
    }
  }
  EXPECT_EQ(w(1, 1), 0.5);
  EXPECT_EQ(w(1, 0), 0.5);
}

TEST(WeightsTest, CompleteThreeAgents) {
  const WeightMatrix w = BuildWeights(Schedule(Topology::kComplete, 3), 0, 1);
  const double third = 1.0 / 3.0;
  const double expected[3][3] = {
      {third, third, third}, {0, 1, 0}, {third, third, third}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(w(i, j), expected[i][j]);
  }
}

TEST(WeightsTest, RowsAreStochasticAndNonnegative) {
  std::mt19937 gen(4);
  const Topology kinds[] = {Topology::kComplete, Topology::kStaticStar,
                            Topology::kStaticRing, Topology::kTimeVaryingStar,
                            Topology::kTimeVaryingRing};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 7);
    CommSchedule s = Schedule(kinds[gen() % 5], n);
    s.hub = static_cast<int>(gen() % n);
    const WeightMatrix w = BuildWeights(s, gen() % 100, static_cast<int>(gen() % n));
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        EXPECT_GE(w(i, j), 0.0);
        sum += w(i, j);
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

ParamSet RandomParams(int n, int k, std::mt19937& gen) {
  std::normal_distribution<double> normal;
  ParamSet p(n, AgentParams(k));
  for (auto& a : p) {
    for (double& x : a.flat()) x = normal(gen);
  }
  return p;
}

TEST(ConsensusTest, ExactBeliefsAreAFixedPoint) {
  std::mt19937 gen(5);
  const ParamSet truth = RandomParams(5, 2, gen);
  BeliefTable b = BeliefTable::Init(truth, BeliefInit::kExact);
  for (auto topo : {Topology::kComplete, Topology::kStaticRing, Topology::kTimeVaryingStar}) {
    ConsensusStep(b, truth, Schedule(topo, 5), 3);
    EXPECT_LT(BeliefError(b, truth), 1e-14);
  }
}

TEST(ConsensusTest, TwoAgentsHalveTheError) {
  std::mt19937 gen(6);
  const ParamSet truth = RandomParams(2, 3, gen);
  BeliefTable b = BeliefTable::Init(truth, BeliefInit::kZero);
  double prev = BeliefError(b, truth);
  for (int t = 0; t < 10; ++t) {
    ConsensusStep(b, truth, Schedule(Topology::kComplete, 2), t);
    const double now = BeliefError(b, truth);
    EXPECT_NEAR(now, prev / 2, 1e-13 * prev);
    prev = now;
  }
}

TEST(ConsensusTest, PerfectOverwrites) {
  std::mt19937 gen(7);
  const ParamSet truth = RandomParams(4, 2, gen);
  BeliefTable b = BeliefTable::Init(truth, BeliefInit::kZero);
  ConsensusStep(b, truth, Schedule(Topology::kPerfect, 4), 0);
  for (const auto& view : b.copies) EXPECT_EQ(view, truth);
}

TEST(ConsensusTest, DiagonalRefreshedFromTruth) {
  std::mt19937 gen(8);
  const ParamSet old_truth = RandomParams(3, 2, gen);
  const ParamSet truth = RandomParams(3, 2, gen);
  BeliefTable b = BeliefTable::Init(old_truth, BeliefInit::kZero);
  ConsensusStep(b, truth, Schedule(Topology::kStaticRing, 3), 0);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(b.copies[i][i], truth[i]);
}

// The direct neighbor mixing equals multiplication by BuildWeights.
TEST(ConsensusTest, MatchesExplicitWeightMatrix) {
  std::mt19937 gen(9);
  const Topology kinds[] = {Topology::kComplete, Topology::kStaticStar,
                            Topology::kStaticRing, Topology::kTimeVaryingStar,
                            Topology::kTimeVaryingRing};
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 5);
    CommSchedule s = Schedule(kinds[trial % 5], n);
    s.hub = static_cast<int>(gen() % n);
    const ParamSet truth = RandomParams(n, 2, gen);
    BeliefTable b;
    for (int i = 0; i < n; ++i) b.copies.push_back(RandomParams(n, 2, gen));
    const std::int64_t t = gen() % 50;

    BeliefTable expected = b;
    for (int j = 0; j < n; ++j) expected.copies[j][j] = truth[j];
    const BeliefTable refreshed = expected;
    for (int j = 0; j < n; ++j) {
      const WeightMatrix w = BuildWeights(s, t, j);
      for (int i = 0; i < n; ++i) {
        for (int m = 0; m < 4; ++m) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += w(i, l) * refreshed.copies[l][j].flat()[m];
          expected.copies[i][j].flat()[m] = acc;
        }
      }
    }
    ConsensusStep(b, truth, s, t);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int m = 0; m < 4; ++m) {
          EXPECT_NEAR(b.copies[i][j].flat()[m], expected.copies[i][j].flat()[m], 1e-14);
        }
      }
    }
  }
}

TEST(BeliefErrorTest, Examples) {
  ParamSet truth(2, AgentParams(1));
  truth[0].intercept(0) = 3.0;
  truth[0].slope(0) = 4.0;
  BeliefTable b = BeliefTable::Init(truth, BeliefInit::kZero);
  // Agent 1's copy of agent 0 is off by norm 5; agent 0's copy of agent 1 is exact.
  EXPECT_DOUBLE_EQ(BeliefError(b, truth), 2.5);
  EXPECT_EQ(BeliefError(BeliefTable::Init(truth, BeliefInit::kExact), truth), 0.0);
}

TEST(BeliefErrorTest, InvariantUnderRelabeling) {
  std::mt19937 gen(10);
  const int n = 4;
  const ParamSet truth = RandomParams(n, 2, gen);
  BeliefTable b;
  for (int i = 0; i < n; ++i) b.copies.push_back(RandomParams(n, 2, gen));
  const int perm[n] = {2, 0, 3, 1};
  ParamSet truth_p(n, AgentParams(2));
  BeliefTable b_p{std::vector<ParamSet>(n, ParamSet(n, AgentParams(2)))};
  for (int i = 0; i < n; ++i) {
    truth_p[perm[i]] = truth[i];
    for (int j = 0; j < n; ++j) b_p.copies[perm[i]][perm[j]] = b.copies[i][j];
  }
  EXPECT_NEAR(BeliefError(b, truth), BeliefError(b_p, truth_p), 1e-14);
}

// With frozen parameters a connected schedule drives the error to zero
// geometrically.
TEST(ConsensusTest, FrozenParametersDecayGeometrically) {
  std::mt19937 gen(11);
  const ParamSet truth = RandomParams(5, 2, gen);
  for (auto topo : {Topology::kComplete, Topology::kStaticRing,
                    Topology::kTimeVaryingStar, Topology::kTimeVaryingRing}) {
    const CommSchedule s = Schedule(topo, 5, 4);
    BeliefTable b = BeliefTable::Init(truth, BeliefInit::kZero);
    const double start = BeliefError(b, truth);
    for (int t = 0; t < 400; ++t) ConsensusStep(b, truth, s, t);
    EXPECT_LT(BeliefError(b, truth), 1e-3 * start);
  }
}

}  // namespace
}  // namespace npg
