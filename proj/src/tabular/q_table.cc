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

#include "barocco/tabular/q_table.h"

#include <cmath>

#include "barocco/common/errors.h"
#include "barocco/common/random.h"
#include "barocco/envs/matrix_game.h"

namespace barocco {

QTable::QTable(int num_states, std::vector<int> num_actions)
    : num_states_(num_states), num_actions_(std::move(num_actions)) {
  if (num_states_ <= 0 || num_actions_.empty()) {
    throw DomainError("QTable: need states and agents");
  }
  std::size_t total = 0;
  for (int n : num_actions_) {
    if (n <= 0) throw DomainError("QTable: action counts must be positive");
    agent_offsets_.push_back(total);
    total += static_cast<std::size_t>(num_states_) * n;
  }
  values_.assign(total, 0.0);
}

std::size_t QTable::Offset(int agent, int state) const {
  if (agent < 0 || agent >= num_agents() || state < 0 || state >= num_states_) {
    throw DomainError("QTable: index out of range");
  }
  return agent_offsets_[agent] +
         static_cast<std::size_t>(state) * num_actions_[agent];
}

double QTable::value(int agent, int state, int action) const {
  return row(agent, state)[action];
}

double& QTable::mutable_value(int agent, int state, int action) {
  if (action < 0 || action >= num_actions_[agent]) {
    throw DomainError("QTable: action out of range");
  }
  return values_[Offset(agent, state) + action];
}

std::span<const double> QTable::row(int agent, int state) const {
  return {values_.data() + Offset(agent, state),
          static_cast<std::size_t>(num_actions_[agent])};
}

int QTable::Greedy(int agent, int state) const {
  const auto q = row(agent, state);
  int best = 0;
  for (int a = 1; a < static_cast<int>(q.size()); ++a) {
    if (q[a] > q[best]) best = a;
  }
  return best;
}

double QTable::MaxValue(int agent, int state) const {
  return row(agent, state)[Greedy(agent, state)];
}

void TabularQUpdate(QTable& table, const TabularTransition& transition,
                    double learning_rate, double gamma, double lambda,
                    SwChoice sw) {
  const int n = table.num_agents();
  if (static_cast<int>(transition.actions.size()) != n ||
      static_cast<int>(transition.rewards.size()) != n) {
    throw ShapeError("TabularQUpdate: transition has wrong agent count");
  }
  std::vector<double> targets(n);
  for (int i = 0; i < n; ++i) {
    targets[i] = CrsReward(i, transition.rewards, lambda, sw);
    if (!transition.terminal) {
      targets[i] += gamma * table.MaxValue(i, transition.next_state);
    }
  }
  for (int i = 0; i < n; ++i) {
    double& q = table.mutable_value(i, transition.state, transition.actions[i]);
    q += learning_rate * (targets[i] - q);
  }
}

MpdOutcome TrainMpd(double lambda, std::uint64_t seed,
                    const MpdOptions& options) {
  CheckLambda(lambda);
  if (options.iterations <= 0) {
    throw ConfigError("TrainMpd: iterations must be positive");
  }
  MatrixGame game(ModifiedPrisonersDilemma());
  game.Reset(seed);
  QTable table(1, {game.num_actions(0), game.num_actions(1)});
  Rng rng(seed, /*stream=*/0x3D);
  TabularTransition transition;
  transition.actions.assign(2, 0);
  for (std::int64_t k = 0; k < options.iterations; ++k) {
    const double epsilon =
        1.0 - static_cast<double>(k) / static_cast<double>(options.iterations);
    for (int i = 0; i < 2; ++i) {
      transition.actions[i] = rng.Uniform() < epsilon
                                  ? rng.UniformInt(table.num_actions(i))
                                  : table.Greedy(i, 0);
    }
    transition.rewards = game.Step(transition.actions).rewards;
    TabularQUpdate(table, transition, options.learning_rate, /*gamma=*/0.0,
                   lambda, options.sw);
  }
  return {lambda, seed, table.Greedy(0, 0), table.Greedy(1, 0)};
}

std::vector<MpdOutcome> MpdSweep(std::span<const double> lambdas,
                                 std::span<const std::uint64_t> seeds,
                                 const MpdOptions& options) {
  std::vector<MpdOutcome> out;
  for (double lambda : lambdas) {
    for (std::uint64_t seed : seeds) out.push_back(TrainMpd(lambda, seed, options));
  }
  return out;
}

}  // namespace barocco
