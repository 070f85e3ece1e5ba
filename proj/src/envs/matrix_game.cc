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

#include "barocco/envs/matrix_game.h"

#include <algorithm>
#include <string>

#include "barocco/common/errors.h"

namespace barocco {

int Environment::max_num_actions() const {
  int best = 0;
  for (int i = 0; i < num_agents(); ++i) best = std::max(best, num_actions(i));
  return best;
}

void Environment::CheckJointAction(std::span<const int> joint_action) const {
  if (static_cast<int>(joint_action.size()) != num_agents()) {
    throw ShapeError("joint action has " + std::to_string(joint_action.size()) +
                     " entries for " + std::to_string(num_agents()) +
                     " agents");
  }
  for (int i = 0; i < num_agents(); ++i) {
    if (joint_action[i] < 0 || joint_action[i] >= num_actions(i)) {
      throw DomainError("action " + std::to_string(joint_action[i]) +
                        " out of range for agent " + std::to_string(i));
    }
  }
}

void Environment::FillObservations(StepResult& result) const {
  result.state = GlobalState();
  result.observations.clear();
  for (int i = 0; i < num_agents(); ++i) {
    result.observations.push_back(Observe(i));
  }
}

MatrixGameSpec ModifiedPrisonersDilemma() {
  MatrixGameSpec spec;
  spec.row_actions = {"Defect", "Cooperate"};
  spec.column_actions = {"Defect", "Cooperate", "Sacrifice"};
  spec.payoffs = {
      {{5, 5}, {15, 0}, {21, 0}},
      {{0, 15}, {10, 10}, {21, 0}},
  };
  return spec;
}

MatrixGame::MatrixGame(MatrixGameSpec spec) : spec_(std::move(spec)) {
  if (spec_.payoffs.size() != spec_.row_actions.size()) {
    throw ShapeError("MatrixGame: payoff rows do not match row actions");
  }
  for (const auto& row : spec_.payoffs) {
    if (row.size() != spec_.column_actions.size()) {
      throw ShapeError("MatrixGame: payoff columns do not match column actions");
    }
  }
}

int MatrixGame::num_actions(int agent) const {
  return static_cast<int>(agent == 0 ? spec_.row_actions.size()
                                     : spec_.column_actions.size());
}

void MatrixGame::Reset(std::uint64_t) { last_payoffs_ = {0.0, 0.0}; }

StepResult MatrixGame::Step(std::span<const int> joint_action) {
  CheckJointAction(joint_action);
  const auto& cell = spec_.payoffs[joint_action[0]][joint_action[1]];
  StepResult result;
  result.rewards = {cell[0], cell[1]};
  result.terminated = {true, true};
  result.done = true;
  last_payoffs_ = result.rewards;
  FillObservations(result);
  return result;
}

std::vector<double> MatrixGame::Observe(int agent) const {
  if (agent < 0 || agent >= 2) throw DomainError("MatrixGame: bad agent index");
  return {1.0};
}

std::unique_ptr<Environment> MatrixGame::Clone() const {
  return std::make_unique<MatrixGame>(*this);
}

}  // namespace barocco
