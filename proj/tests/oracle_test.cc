// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "leadsel/oracle.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "leadsel/errors.h"
#include "leadsel/linalg.h"
#include "test_util.h"

namespace leadsel {
namespace {

using ::leadsel::testing::CompleteGraph;
using ::leadsel::testing::PathGraph;
using ::leadsel::testing::ReferenceObjective;
using ::leadsel::testing::StarGraph;

TEST(ObjectiveTest, PathExamples) {
  const Graph p3 = PathGraph(3);
  const NodeId middle[] = {1};
  const NodeId end[] = {0};
  EXPECT_NEAR(Objective(p3, middle), 1.0, 1e-14);
  EXPECT_NEAR(Objective(p3, end), 1.5, 1e-14);
  EXPECT_NEAR(Objective(CompleteGraph(2), end), 0.5, 1e-14);
}

TEST(ObjectiveTest, UndefinedSets) {
  const Graph p3 = PathGraph(3);
  EXPECT_THROW(Objective(p3, std::vector<NodeId>{}), InvalidArgument);
  EXPECT_THROW(Objective(p3, std::vector<NodeId>{0, 1, 2}), InvalidArgument);
  EXPECT_THROW(Objective(p3, std::vector<NodeId>{0, 0}), InvalidArgument);
  EXPECT_THROW(Objective(p3, std::vector<NodeId>{3}), InvalidArgument);
}

TEST(ObjectiveTest, DisconnectedGraphRejected) {
  EXPECT_THROW(ObjectiveContext(Graph(4, {{0, 1, 1.0}, {2, 3, 1.0}})),
               InvalidArgument);
}

TEST(FirstIterationTest, Examples) {
  const auto p3 = FirstIterationObjectives(PathGraph(3));
  ASSERT_EQ(p3.size(), 3u);
  EXPECT_NEAR(p3[0], 1.5, 1e-12);
  EXPECT_NEAR(p3[1], 1.0, 1e-12);
  EXPECT_NEAR(p3[2], 1.5, 1e-12);

  const auto k2 = FirstIterationObjectives(CompleteGraph(2));
  EXPECT_NEAR(k2[0], 0.5, 1e-12);
  EXPECT_NEAR(k2[1], 0.5, 1e-12);

  const auto k3 = FirstIterationObjectives(CompleteGraph(3));
  EXPECT_NEAR(k3[0], k3[1], 1e-12);
  EXPECT_NEAR(k3[1], k3[2], 1e-12);
}

TEST(FirstIterationTest, MatchesDirectGrounding) {
  const Graph g = GenerateErdosRenyi(40, 0.15, 3);
  const auto values = FirstIterationObjectives(g);
  for (NodeId v = 0; v < 40; ++v) {
    EXPECT_NEAR(values[v], ReferenceObjective(g, {v}), 1e-9 * values[v]);
  }
}

class OracleKindTest : public ::testing::TestWithParam<OracleKind> {};

TEST_P(OracleKindTest, MarginalGainOnPath) {
  ObjectiveContext ctx(PathGraph(3));
  const OracleState s0 = OracleState(ctx, GetParam()).Commit(0);
  EXPECT_NEAR(s0.objective(), 1.5, 1e-12);
  EXPECT_NEAR(s0.MarginalGain(1), 1.0, 1e-12);
  EXPECT_NEAR(s0.MarginalGain(2), 1.25, 1e-12);
  EXPECT_EQ(s0.call_count(), 2u);
  EXPECT_THROW(s0.MarginalGain(0), InvalidArgument);
}

TEST_P(OracleKindTest, CommitOnPath) {
  ObjectiveContext ctx(PathGraph(3));
  const OracleState s0 = OracleState(ctx, GetParam()).Commit(0);
  const OracleState s1 = s0.Commit(1);
  EXPECT_EQ(s1.leaders(), (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(s1.index_map(), (std::vector<NodeId>{2}));
  EXPECT_NEAR(s1.objective(), 0.5, 1e-12);
  if (GetParam() == OracleKind::kAccelerated) {
    ASSERT_EQ(s1.grounded_inverse().rows(), 1u);
    EXPECT_NEAR(s1.grounded_inverse()(0, 0), 1.0, 1e-12);
    EXPECT_LE(s1.InverseResidual(), 1e-12);
  }
  // s0 is a snapshot and is left untouched.
  EXPECT_EQ(s0.leaders(), (std::vector<NodeId>{0}));
}

TEST_P(OracleKindTest, CannotExhaustFollowers) {
  ObjectiveContext ctx(CompleteGraph(2));
  const OracleState s0 = OracleState(ctx, GetParam()).Commit(0);
  EXPECT_THROW(s0.Commit(1), InvalidArgument);
  EXPECT_THROW(s0.MarginalGain(1), InvalidArgument);
}

TEST_P(OracleKindTest, EmptySetRules) {
  ObjectiveContext ctx(PathGraph(4));
  const OracleState s(ctx, GetParam());
  EXPECT_THROW(s.objective(), InvalidArgument);
  EXPECT_THROW(s.MarginalGain(1), InvalidArgument);
  const NodeId all[] = {0, 1, 2, 3};
  const auto values = s.SingletonObjectives(all);
  EXPECT_EQ(s.call_count(), 4u);
  EXPECT_NEAR(values[0], ReferenceObjective(ctx.graph(), {0}), 1e-12);
  EXPECT_THROW(s.Commit(0).SingletonObjectives(all), InvalidArgument);
}

// Supermodularity of the objective, i.e. diminishing decreases:
// gain_S(v) >= gain_T(v) for S subset of T, v outside T.
TEST_P(OracleKindTest, DiminishingGainsProperty) {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 200; ++seed) {
    const std::size_t n = 6 + seed % 10;
    ObjectiveContext ctx(GenerateErdosRenyi(n, 0.4, seed));
    std::vector<NodeId> order(n);
    for (NodeId v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    // S = first s, T = first t (s <= t), v = order[t]; T + v leaves a
    // follower.
    const std::size_t t = 1 + rng() % (n - 2);
    const std::size_t s = 1 + rng() % t;
    OracleState small(ctx, GetParam()), large(ctx, GetParam());
    for (std::size_t i = 0; i < t; ++i) {
      if (i < s) small = small.Commit(order[i]);
      large = large.Commit(order[i]);
    }
    const NodeId v = order[t];
    const double gs = small.MarginalGain(v), gt = large.MarginalGain(v);
    EXPECT_GE(gs, gt - 1e-10);
    EXPECT_GT(gt, 0.0);  // strictly decreasing objective
    ++checked;
  }
}

INSTANTIATE_TEST_SUITE_P(BothKinds, OracleKindTest,
                         ::testing::Values(OracleKind::kNaive,
                                           OracleKind::kAccelerated),
                         [](const auto& info) {
                           return std::string(ToString(info.param));
                         });

TEST(OracleEquivalenceTest, AcceleratedMatchesNaiveAlongRandomSequences) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {8u, 20u, 50u}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      ObjectiveContext ctx(GenerateErdosRenyi(n, 0.25, seed));
      std::vector<NodeId> order(n);
      for (NodeId v = 0; v < n; ++v) order[v] = v;
      std::shuffle(order.begin(), order.end(), rng);
      OracleState fast(ctx, OracleKind::kAccelerated);
      OracleState slow(ctx, OracleKind::kNaive);
      for (std::size_t i = 0; i + 1 < n && i < 12; ++i) {
        if (i > 0) {
          const NodeId probe = order[i];
          EXPECT_NEAR(fast.MarginalGain(probe), slow.MarginalGain(probe),
                      1e-8 * slow.objective());
        }
        fast = fast.Commit(order[i]);
        slow = slow.Commit(order[i]);
        const double reference = ReferenceObjective(ctx.graph(), fast.leaders());
        EXPECT_NEAR(fast.objective(), reference, 1e-8 * reference);
        EXPECT_NEAR(slow.objective(), reference, 1e-8 * reference);
        EXPECT_LE(fast.InverseResidual(), 1e-6);
      }
      EXPECT_EQ(fast.call_count(), slow.call_count());
    }
  }
}

TEST(OracleStateTest, IndexMapIsBijectionOntoFollowers) {
  ObjectiveContext ctx(GenerateErdosRenyi(15, 0.3, 2));
  OracleState s(ctx, OracleKind::kAccelerated);
  for (NodeId v : {7u, 0u, 14u, 3u, 9u}) {
    s = s.Commit(v);
    std::vector<NodeId> followers = s.index_map();
    std::sort(followers.begin(), followers.end());
    std::vector<NodeId> expected;
    for (NodeId u = 0; u < 15; ++u) {
      if (!s.is_leader(u)) expected.push_back(u);
    }
    EXPECT_EQ(followers, expected);
    EXPECT_EQ(s.grounded_inverse().rows(), 15 - s.leaders().size());
  }
}

TEST(OracleStateTest, PeriodicRefreshKeepsInverseAccurate) {
  const std::size_t n = 150;
  ObjectiveContext ctx(GenerateErdosRenyi(n, 0.08, 5));
  OracleState s(ctx, OracleKind::kAccelerated);
  s = s.Commit(0);
  for (NodeId v = 1; v <= kRefreshInterval + 5; ++v) {
    s = s.Commit(v);
    EXPECT_EQ(s.refresh_counter(), v % kRefreshInterval);
  }
  EXPECT_LE(s.InverseResidual(), 1e-8);
  const double reference = ReferenceObjective(ctx.graph(), s.leaders());
  EXPECT_NEAR(s.objective(), reference, 1e-9 * reference);
}

TEST(BruteForceTest, Examples) {
  const auto p3 = BruteForceOptimum(PathGraph(3), 1);
  EXPECT_EQ(p3.leaders, (std::vector<NodeId>{1}));
  EXPECT_NEAR(p3.objective, 1.0, 1e-12);

  const auto k3 = BruteForceOptimum(CompleteGraph(3), 1);
  EXPECT_EQ(k3.leaders, (std::vector<NodeId>{0}));

  const auto star = BruteForceOptimum(StarGraph(4), 1);
  EXPECT_EQ(star.leaders, (std::vector<NodeId>{0}));
  EXPECT_NEAR(star.objective, 1.5, 1e-12);

  // The two end nodes of P3 beat either pair containing the middle.
  const auto p3k2 = BruteForceOptimum(PathGraph(3), 2);
  EXPECT_EQ(p3k2.leaders, (std::vector<NodeId>{0, 2}));
  EXPECT_NEAR(p3k2.objective, 0.25, 1e-12);
}

TEST(BruteForceTest, Guards) {
  EXPECT_THROW(BruteForceOptimum(PathGraph(21), 1), InvalidArgument);
  EXPECT_THROW(BruteForceOptimum(PathGraph(5), 0), InvalidArgument);
  EXPECT_NO_THROW(BruteForceOptimum(PathGraph(20), 2));
}

}  // namespace
}  // namespace leadsel
