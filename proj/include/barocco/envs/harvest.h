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

#ifndef BAROCCO_ENVS_HARVEST_H_
#define BAROCCO_ENVS_HARVEST_H_

#include <array>
#include <string>
#include <vector>

#include "barocco/common/random.h"
#include "barocco/envs/environment.h"

namespace barocco {

struct HarvestConfig {
  // '@' wall, 'A' apple cell (starts with an apple), 'P' spawn point, ' '
  // empty floor. Rows must have equal length.
  std::vector<std::string> map;
  int num_agents = 2;
  int horizon = 1000;
  // Side of the egocentric square view; odd.
  int view_size = 15;
  int beam_length = 5;
  // Apples counted within Euclidean distance regrowth_radius.
  int regrowth_radius = 2;
  // Regrowth probability per empty apple cell for 0, 1-2, 3-4 and >= 5
  // nearby apples.
  std::array<double, 4> regrowth_probabilities = {0.0, 0.01, 0.05, 0.1};
  double apple_reward = 1.0;
  double hit_penalty = -50.0;
  double fire_penalty = -1.0;
};

// Reduced map used by the desk-scale experiments.
std::vector<std::string> HarvestLiteMap();
// 16 x 38 map with room for five agents.
std::vector<std::string> HarvestFullMap();
HarvestConfig HarvestLiteConfig();
HarvestConfig HarvestFullConfig();

// Apple-gathering commons. Actions: 0 forward, 1 backward, 2 strafe left,
// 3 strafe right, 4 turn left, 5 turn right, 6 stay, 7 fire a beam.
//
// Per step: turns and moves, -1 for entering a cell on fire, apple
// collection, beams (-50 to the first agent hit, fire left on traversed
// cells for one step), regrowth of empty apple cells with a probability that
// grows with the number of apples nearby.
class Harvest : public Environment {
 public:
  static constexpr int kNumActions = 8;
  static constexpr int kNumPlanes = 4;  // apples, agents, fire, walls

  struct AgentState {
    int row = 0;
    int col = 0;
    int orientation = 0;  // 0 north, 1 east, 2 south, 3 west
    int apples = 0;
    int times_hit = 0;
  };

  explicit Harvest(HarvestConfig config);

  const HarvestConfig& config() const { return config_; }
  int height() const { return height_; }
  int width() const { return width_; }
  bool is_wall(int row, int col) const;
  bool is_apple_cell(int row, int col) const {
    return apple_cell_[Index(row, col)];
  }
  bool has_apple(int row, int col) const { return apples_[Index(row, col)]; }
  bool on_fire(int row, int col) const { return fire_[Index(row, col)] > 0; }
  int num_apples() const;
  int num_apple_cells() const;
  const AgentState& agent(int i) const { return agents_[i]; }
  AgentState& mutable_agent(int i) { return agents_[i]; }
  void set_apple(int row, int col, bool present);
  // Apples within the regrowth radius of a cell, the cell itself excluded.
  int NearbyApples(int row, int col) const;
  double RegrowthProbability(int nearby) const;

  std::string_view name() const override { return "harvest"; }
  int num_agents() const override { return config_.num_agents; }
  int num_actions(int) const override { return kNumActions; }
  int observation_size() const override;
  int state_size() const override;
  // All apple cells start full.
  void Reset(std::uint64_t seed) override;
  StepResult Step(std::span<const int> joint_action) override;
  // Egocentric view rotated so the agent faces up, plane-major.
  std::vector<double> Observe(int agent) const override;
  // Apple and fire planes of the whole map, then per agent normalized
  // position and one-hot orientation.
  std::vector<double> GlobalState() const override;
  // Apples collected this episode.
  std::vector<double> EpisodeScores() const override;
  std::string_view score_name() const override { return "apples"; }
  std::unique_ptr<Environment> Clone() const override;

 private:
  std::size_t Index(int row, int col) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }
  bool Occupied(int row, int col, int except) const;

  HarvestConfig config_;
  int height_ = 0;
  int width_ = 0;
  std::vector<bool> wall_;
  std::vector<bool> apple_cell_;
  std::vector<bool> apples_;
  std::vector<int> fire_;
  std::vector<std::array<int, 2>> spawns_;
  std::vector<AgentState> agents_;
  int time_step_ = 0;
  Rng rng_;
};

}  // namespace barocco

#endif  // BAROCCO_ENVS_HARVEST_H_
