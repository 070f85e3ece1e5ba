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

#ifndef BAROCCO_TABULAR_Q_TABLE_H_
#define BAROCCO_TABULAR_Q_TABLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "barocco/welfare/welfare.h"

namespace barocco {

class QTable {
 public:
  QTable(int num_states, std::vector<int> num_actions);

  int num_agents() const { return static_cast<int>(num_actions_.size()); }
  int num_states() const { return num_states_; }
  int num_actions(int agent) const { return num_actions_[agent]; }
  double value(int agent, int state, int action) const;
  double& mutable_value(int agent, int state, int action);
  std::span<const double> row(int agent, int state) const;
  // Ties go to the lowest action index.
  int Greedy(int agent, int state) const;
  double MaxValue(int agent, int state) const;

 private:
  std::size_t Offset(int agent, int state) const;

  int num_states_;
  std::vector<int> num_actions_;
  std::vector<std::size_t> agent_offsets_;
  std::vector<double> values_;
};

struct TabularTransition {
  int state = 0;
  std::vector<int> actions;
  std::vector<double> rewards;
  int next_state = 0;
  bool terminal = true;
};

// Q_i(s, a_i) += lr * (r_i^mix + gamma * max Q_i(s', .) - Q_i(s, a_i)) for
// every agent, with r_i^mix the CRS reward.
void TabularQUpdate(QTable& table, const TabularTransition& transition,
                    double learning_rate, double gamma, double lambda,
                    SwChoice sw);

struct MpdOptions {
  std::int64_t iterations = 100000;
  double learning_rate = 0.1;
  SwChoice sw = SwChoice::kSum;
};

struct MpdOutcome {
  double lambda = 0.0;
  std::uint64_t seed = 0;
  int row_action = 0;
  int column_action = 0;
};

// Independent epsilon-greedy learners on the one-shot game; epsilon falls
// linearly from 1 to 0 over the iterations.
MpdOutcome TrainMpd(double lambda, std::uint64_t seed,
                    const MpdOptions& options = {});
std::vector<MpdOutcome> MpdSweep(std::span<const double> lambdas,
                                 std::span<const std::uint64_t> seeds,
                                 const MpdOptions& options = {});

}  // namespace barocco

#endif  // BAROCCO_TABULAR_Q_TABLE_H_
