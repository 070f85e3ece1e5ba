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

#ifndef BAROCCO_ENVS_ENVIRONMENT_H_
#define BAROCCO_ENVS_ENVIRONMENT_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace barocco {

struct StepResult {
  std::vector<double> rewards;
  // Agent's life ended this step (it respawns before the next step in
  // respawning environments).
  std::vector<bool> terminated;
  // Episode over; Reset() is required before the next Step().
  bool done = false;
  std::vector<double> state;
  std::vector<std::vector<double>> observations;
};

// Simultaneous-move Markov game. Implementations are deterministic given the
// Reset() seed and the action sequence.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string_view name() const = 0;
  virtual int num_agents() const = 0;
  virtual int num_actions(int agent) const = 0;
  virtual int observation_size() const = 0;
  virtual int state_size() const = 0;

  virtual void Reset(std::uint64_t seed) = 0;
  // Throws DomainError for an out-of-range action.
  virtual StepResult Step(std::span<const int> joint_action) = 0;

  virtual std::vector<double> Observe(int agent) const = 0;
  virtual std::vector<double> GlobalState() const = 0;

  // Per-agent score of the current episode as reported in metric logs
  // (lifetime, apples or payoff depending on the environment).
  virtual std::vector<double> EpisodeScores() const = 0;
  virtual std::string_view score_name() const = 0;

  virtual std::unique_ptr<Environment> Clone() const = 0;

  int max_num_actions() const;

 protected:
  void CheckJointAction(std::span<const int> joint_action) const;
  // Fills state and observations of a step result from the current state.
  void FillObservations(StepResult& result) const;
};

}  // namespace barocco

#endif  // BAROCCO_ENVS_ENVIRONMENT_H_
