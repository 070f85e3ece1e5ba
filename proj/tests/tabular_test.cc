// Copyright 2026 The BAROCCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include "barocco/common/errors.h"
#include "barocco/common/random.h"
#include "barocco/envs/matrix_game.h"
#include "barocco/tabular/q_table.h"
#include "barocco/tabular/tabular_game.h"
#include "barocco/welfare/welfare.h"
#include "gtest/gtest.h"

namespace barocco {
namespace {

// Iterative policy evaluation; independent of the linear solve.
std::vector<double> IterateValues(const TabularGame& game, const TabularPolicies& pi,
                                  const std::vector<std::vector<double>>& reward) {
  std::vector<double> v(game.num_states, 0.0);
  for (int it = 0; it < 5000; ++it) {
    std::vector<double> next(game.num_states, 0.0);
    for (int s = 0; s < game.num_states; ++s) {
      for (int j = 0; j < game.num_joint_actions(); ++j) {
        const std::vector<int> acts = game.JointActions(j);
        double p = 1.0;
        for (int i = 0; i < game.num_agents(); ++i) p *= pi[i][s][acts[i]];
        double cont = 0.0;
        for (int t = 0; t < game.num_states; ++t) cont += game.transitions[s][j][t] * v[t];
        next[s] += p * (reward[s][j] + game.gamma * cont);
      }
    }
    v = next;
  }
  return v;
}

TEST(TabularGameTest, JointIndexRoundTrip) {
  TabularGame g;
  g.num_actions = {2, 3, 2};
  EXPECT_EQ(g.num_joint_actions(), 12);
  for (int j = 0; j < 12; ++j) EXPECT_EQ(g.JointIndex(g.JointActions(j)), j);
  EXPECT_EQ(g.JointIndex(std::vector<int>{1, 0, 0}), 6);
}

TEST(TabularGameTest, RandomGamesAreValid) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const TabularGame g = RandomTabularGame(rng, 4, 2, 2, 0.9);
    EXPECT_NO_THROW(g.Validate());
    for (const auto& per_state : g.transitions) {
      for (const auto& row : per_state) {
        double total = 0.0;
        for (double p : row) {
          EXPECT_GE(p, 0.0);
          total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
      }
    }
  }
}

TEST(TabularGameTest, ValidateRejectsBadRows) {
  TabularGame g = AllocatorGame(0.9);
  g.transitions[0][0][1] = 0.5;
  EXPECT_THROW(g.Validate(), DomainError);
}

TEST(ExactPolicyEvalTest, MatchesValueIteration) {
  Rng rng(2);
  for (int k = 0; k < 10; ++k) {
    const TabularGame g = RandomTabularGame(rng, 4, 2, 2, 0.9);
    const TabularPolicies pi = RandomPolicies(g, rng);
    const PolicyValues v = ExactPolicyEval(g, pi, SwChoice::kMin);
    for (int i = 0; i < 2; ++i) {
      std::vector<std::vector<double>> r(g.num_states, std::vector<double>(g.num_joint_actions()));
      for (int s = 0; s < g.num_states; ++s) {
        for (int j = 0; j < g.num_joint_actions(); ++j) r[s][j] = g.rewards[s][j][i];
      }
      const auto oracle = IterateValues(g, pi, r);
      for (int s = 0; s < g.num_states; ++s) EXPECT_NEAR(v.selfish[i][s], oracle[s], 1e-10);
    }
    for (int s = 0; s < g.num_states; ++s) {
      EXPECT_EQ(v.long_term[s], std::min(v.selfish[0][s], v.selfish[1][s]));
    }
  }
}

TEST(ExactPolicyEvalTest, SumDefinitionsCoincide) {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const TabularGame g = RandomTabularGame(rng, 4, 1 + k % 3, 2, 0.95);
    const PolicyValues v = ExactPolicyEval(g, RandomPolicies(g, rng), SwChoice::kSum);
    for (int s = 0; s < g.num_states; ++s) EXPECT_NEAR(v.short_term[s], v.long_term[s], 1e-10);
  }
}

TEST(ExactPolicyEvalTest, SingleAgentDefinitionsReduceToSelfish) {
  Rng rng(4);
  const TabularGame g = RandomTabularGame(rng, 3, 1, 3, 0.8);
  for (SwChoice sw : {SwChoice::kSum, SwChoice::kMin}) {
    const PolicyValues v = ExactPolicyEval(g, RandomPolicies(g, rng), sw);
    for (int s = 0; s < 3; ++s) {
      EXPECT_NEAR(v.short_term[s], v.selfish[0][s], 1e-12);
      EXPECT_EQ(v.long_term[s], v.selfish[0][s]);
    }
  }
}

TEST(ExactPolicyEvalTest, AllocatorMinDiverges) {
  for (double g : {0.5, 0.9, 0.99}) {
    const TabularGame game = AllocatorGame(g);
    for (int first = 0; first < 2; ++first) {
      for (int second = 0; second < 2; ++second) {
        const PolicyValues v =
            ExactPolicyEval(game, AllocatorPolicies(first, second), SwChoice::kMin);
        EXPECT_NEAR(v.short_term[0], 0.0, 1e-12);
        EXPECT_NEAR(v.long_term[0], first != second ? g : 0.0, 1e-12);
        const PolicyValues s =
            ExactPolicyEval(game, AllocatorPolicies(first, second), SwChoice::kSum);
        EXPECT_NEAR(s.short_term[0], first == second ? 1 + 2 * g : 1 + g, 1e-12);
      }
    }
  }
}

TEST(ExactPolicyEvalTest, SingularSystemIsReported) {
  TabularGame g = AllocatorGame(0.9);
  g.gamma = 1.0;
  EXPECT_THROW(ExactPolicyEval(g, AllocatorPolicies(0, 1), SwChoice::kSum), NumericError);
}

TEST(FactorizationTest, ExactAtEndpointsAndTightInside) {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const TabularGame g = RandomTabularGame(rng, 4, 2, 2, 0.9);
    const TabularPolicies pi = RandomPolicies(g, rng);
    EXPECT_EQ(FactorizationCheck(g, pi, 0.0), 0.0);
    EXPECT_EQ(FactorizationCheck(g, pi, 1.0), 0.0);
    for (double l : {0.25, 0.3, 0.5, 0.75}) EXPECT_LT(FactorizationCheck(g, pi, l), 1e-10);
  }
}

TEST(QTableTest, GreedyBreaksTiesLow) {
  QTable t(2, {3, 2});
  EXPECT_EQ(t.Greedy(0, 1), 0);
  t.mutable_value(0, 1, 2) = 1.0;
  t.mutable_value(0, 1, 1) = 1.0;
  EXPECT_EQ(t.Greedy(0, 1), 1);
  EXPECT_EQ(t.MaxValue(0, 1), 1.0);
  EXPECT_EQ(t.row(1, 0).size(), 2u);
}

TEST(TabularQUpdateTest, Cases) {
  QTable t(1, {2, 2});
  TabularTransition tr{0, {1, 0}, {10.0, 4.0}, 0, true};
  TabularQUpdate(t, tr, 0.1, 0.0, 0.0, SwChoice::kSum);
  EXPECT_DOUBLE_EQ(t.value(0, 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(t.value(1, 0, 0), 0.4);

  // Full overwrite with bootstrap.
  QTable u(1, {1, 1});
  u.mutable_value(0, 0, 0) = 2.0;
  TabularTransition loop{0, {0, 0}, {1.0, 3.0}, 0, false};
  TabularQUpdate(u, loop, 1.0, 0.5, 0.5, SwChoice::kSum);
  EXPECT_DOUBLE_EQ(u.value(0, 0, 0), 0.5 * 1 + 0.5 * 4 + 0.5 * 2.0);

  // Selfish update ignores the other agent's reward.
  QTable a(1, {1, 1}), b(1, {1, 1});
  TabularQUpdate(a, {0, {0, 0}, {1.0, 3.0}, 0, true}, 0.5, 0.9, 0.0, SwChoice::kSum);
  TabularQUpdate(b, {0, {0, 0}, {1.0, -70.0}, 0, true}, 0.5, 0.9, 0.0, SwChoice::kSum);
  EXPECT_EQ(a.value(0, 0, 0), b.value(0, 0, 0));
}

TEST(TabularQUpdateTest, ConvergesToFixedPointOnSingleAgentChain) {
  // Two states, two actions; deterministic transitions.
  const int next[2][2] = {{0, 1}, {0, 1}};
  const double reward[2][2] = {{0.0, 1.0}, {2.0, 0.5}};
  const double g = 0.5;
  QTable t(2, {2});
  Rng rng(6);
  for (int k = 0; k < 200000; ++k) {
    const int s = rng.UniformInt(2), a = rng.UniformInt(2);
    TabularQUpdate(t, {s, {a}, {reward[s][a]}, next[s][a], false}, 0.05, g, 0.0, SwChoice::kSum);
  }
  // Optimal: from 1 take action 0 (2 + g V0); from 0 take action 1 (1 + g V1).
  const double v1 = (2 + g * 1) / (1 - g * g);
  const double v0 = 1 + g * v1;
  EXPECT_NEAR(t.MaxValue(0, 0), v0, 0.05);
  EXPECT_NEAR(t.MaxValue(0, 1), v1, 0.05);
  EXPECT_NEAR(t.value(0, 1, 1), 0.5 + g * v1, 0.05);
}

TEST(MpdTest, SelfishAgentsDefect) {
  for (std::uint64_t seed : {0, 1, 2, 3, 4}) {
    const MpdOutcome o = TrainMpd(0.0, seed, {.iterations = 20000});
    EXPECT_EQ(o.row_action, mpd::kDefect);
    EXPECT_EQ(o.column_action, mpd::kDefect);
  }
}

TEST(MpdTest, SweepIsDeterministicAndOrdered) {
  const std::vector<double> lambdas = {0.0, 0.5};
  const std::vector<std::uint64_t> seeds = {7, 8};
  const auto a = MpdSweep(lambdas, seeds, {.iterations = 5000});
  const auto b = MpdSweep(lambdas, seeds, {.iterations = 5000});
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].row_action, b[k].row_action);
    EXPECT_EQ(a[k].column_action, b[k].column_action);
  }
  EXPECT_EQ(a[0].lambda, 0.0);
  EXPECT_EQ(a[0].seed, 7u);
  EXPECT_EQ(a[1].seed, 8u);
  EXPECT_THROW(TrainMpd(1.2, 0), ConfigError);
}

}  // namespace
}  // namespace barocco
