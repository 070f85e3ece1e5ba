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

#ifndef BAROCCO_ENVS_ELDORADO_H_
#define BAROCCO_ENVS_ELDORADO_H_

#include <array>
#include <vector>

#include "barocco/common/random.h"
#include "barocco/envs/environment.h"

namespace barocco {

struct EldoradoConfig {
  int width = 8;
  int height = 8;
  // A life ends with +1 after this many steps.
  int max_lifetime = 1000;
  // Episode length; agents respawn within an episode.
  int horizon = 1000;
  int max_health = 10;
  int initial_supply = 16;
  int capacity = 32;
  int tile_yield = 6;
  int recharge_turns = 6;
  // Health regenerates while both supplies exceed this value.
  int regen_threshold = 16;
  double double_damage_probability = 1.0 / 50.0;
  // Stolen units go to the attacker; otherwise they are destroyed.
  bool steal_transfers = true;
};

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Two agents collecting food and water on a small grid. One water tile with
// infinite supply and two food tiles that recharge after each harvest, laid
// out symmetrically under the anti-diagonal reflection that swaps the spawn
// points. Actions 0-4 are up/down/right/left/pass, 5-9 the same combined
// with an attack on the other agent if it is within Chebyshev distance 1.
//
// Per step: movement, collection, attacks, supply decay, health update,
// termination (-1 at zero health, +1 at max_lifetime) and respawn.
class Eldorado : public Environment {
 public:
  static constexpr int kNumActions = 10;
  static constexpr int kObservationSize = 28;

  struct AgentState {
    Cell position;
    int health = 0;
    int food = 0;
    int water = 0;
    int steps_alive = 0;
    int previous_action = 4;
  };

  explicit Eldorado(EldoradoConfig config = {});

  const EldoradoConfig& config() const { return config_; }
  const AgentState& agent(int i) const { return agents_[i]; }
  // Mutable access for scripted test scenarios.
  AgentState& mutable_agent(int i) { return agents_[i]; }
  Cell water_tile() const { return water_; }
  const std::array<Cell, 2>& food_tiles() const { return food_; }
  int food_recharge(int tile) const { return recharge_[tile]; }
  Cell spawn(int agent) const { return spawns_[agent]; }
  int time_step() const { return time_step_; }
  // Lengths of lives completed during the current episode.
  const std::vector<int>& completed_lives(int agent) const {
    return completed_lives_[agent];
  }

  std::string_view name() const override { return "eldorado"; }
  int num_agents() const override { return 2; }
  int num_actions(int) const override { return kNumActions; }
  int observation_size() const override { return kObservationSize; }
  int state_size() const override { return kObservationSize; }
  void Reset(std::uint64_t seed) override;
  StepResult Step(std::span<const int> joint_action) override;
  // Own features first, then the other agent, then food tiles.
  std::vector<double> Observe(int agent) const override;
  // Agent 0, agent 1, food tiles.
  std::vector<double> GlobalState() const override;
  // Length of each agent's first life (running count while still alive).
  std::vector<double> EpisodeScores() const override;
  std::string_view score_name() const override { return "lifetime"; }
  std::unique_ptr<Environment> Clone() const override;

 private:
  void Respawn(int agent);
  bool Inside(Cell c) const;
  void AppendAgentFeatures(int agent, std::vector<double>& out) const;
  void AppendTileFeatures(std::vector<double>& out) const;

  EldoradoConfig config_;
  Cell water_;
  std::array<Cell, 2> food_;
  std::array<Cell, 2> spawns_;
  std::array<AgentState, 2> agents_;
  std::array<int, 2> recharge_{0, 0};
  std::array<std::vector<int>, 2> completed_lives_;
  int time_step_ = 0;
  Rng rng_;
};

}  // namespace barocco

#endif  // BAROCCO_ENVS_ELDORADO_H_
