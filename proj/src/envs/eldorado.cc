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

#include "barocco/envs/eldorado.h"

#include <algorithm>
#include <cstdlib>

#include "barocco/common/errors.h"

namespace barocco {
namespace {

constexpr int kPass = 4;
constexpr std::array<Cell, 5> kMoves = {
    {{-1, 0}, {1, 0}, {0, 1}, {0, -1}, {0, 0}}};

int Chebyshev(Cell a, Cell b) {
  return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col));
}

}  // namespace

Eldorado::Eldorado(EldoradoConfig config) : config_(config) {
  if (config_.width < 4 || config_.height < 4) {
    throw ConfigError("Eldorado: grid must be at least 4x4");
  }
  if (config_.max_lifetime <= 0 || config_.horizon <= 0 ||
      config_.max_health <= 0 || config_.capacity <= 0) {
    throw ConfigError("Eldorado: lifetimes, health and capacity must be positive");
  }
  const int h = config_.height;
  const int w = config_.width;
  spawns_ = {Cell{1, 1}, Cell{h - 2, w - 2}};
  food_ = {Cell{1, w - 2}, Cell{h - 2, 1}};
  water_ = Cell{h / 2, (w - 1) / 2};
  Reset(0);
}

bool Eldorado::Inside(Cell c) const {
  return c.row >= 0 && c.row < config_.height && c.col >= 0 &&
         c.col < config_.width;
}

void Eldorado::Reset(std::uint64_t seed) {
  rng_ = Rng(seed, /*stream=*/0xE1D0);
  time_step_ = 0;
  recharge_ = {0, 0};
  for (int i = 0; i < 2; ++i) {
    completed_lives_[i].clear();
    agents_[i] = AgentState{};
    Respawn(i);
  }
}

void Eldorado::Respawn(int i) {
  AgentState& a = agents_[i];
  a.health = config_.max_health;
  a.food = std::min(config_.initial_supply, config_.capacity);
  a.water = std::min(config_.initial_supply, config_.capacity);
  a.steps_alive = 0;
  a.previous_action = kPass;
  Cell target = spawns_[i];
  const Cell other = agents_[1 - i].position;
  if (target == other && time_step_ > 0) {
    // Spawn occupied: first free neighbour in a fixed scan order.
    for (const Cell d : kMoves) {
      const Cell c{target.row + d.row, target.col + d.col};
      if (Inside(c) && !(c == other)) {
        target = c;
        break;
      }
    }
  }
  a.position = target;
}

StepResult Eldorado::Step(std::span<const int> joint_action) {
  CheckJointAction(joint_action);
  if (time_step_ >= config_.horizon) {
    throw UsageError("Eldorado: Step() after the episode ended");
  }
  // Movement. Moves into an occupied or contested cell are cancelled.
  std::array<Cell, 2> proposed;
  for (int i = 0; i < 2; ++i) {
    const Cell d = kMoves[joint_action[i] % 5];
    const Cell c{agents_[i].position.row + d.row, agents_[i].position.col + d.col};
    proposed[i] = Inside(c) ? c : agents_[i].position;
  }
  const std::array<Cell, 2> wanted = proposed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < 2; ++i) {
      const int j = 1 - i;
      if (proposed[i] == agents_[i].position) continue;
      const bool contested = wanted[i] == wanted[j] || proposed[i] == proposed[j];
      const bool occupied = proposed[i] == agents_[j].position &&
                            proposed[j] == agents_[j].position;
      const bool swap = proposed[i] == agents_[j].position &&
                        proposed[j] == agents_[i].position;
      if (contested || occupied || swap) {
        proposed[i] = agents_[i].position;
        changed = true;
      }
    }
  }
  for (int i = 0; i < 2; ++i) agents_[i].position = proposed[i];

  // Collection. A tile harvested at step t is unavailable at t+1 .. t+6.
  std::array<bool, 2> available;
  for (int k = 0; k < 2; ++k) {
    available[k] = recharge_[k] == 0;
    if (recharge_[k] > 0) --recharge_[k];
  }
  for (int i = 0; i < 2; ++i) {
    AgentState& a = agents_[i];
    if (a.position == water_) {
      a.water = std::min(config_.capacity, a.water + config_.tile_yield);
    }
    for (int k = 0; k < 2; ++k) {
      if (available[k] && a.position == food_[k]) {
        a.food = std::min(config_.capacity, a.food + config_.tile_yield);
        recharge_[k] = config_.recharge_turns;
        available[k] = false;
      }
    }
  }

  // Attacks, computed from the post-collection state and applied together.
  std::array<int, 2> damage{0, 0};
  std::array<int, 2> food_lost{0, 0};
  std::array<int, 2> water_lost{0, 0};
  std::array<int, 2> food_gained{0, 0};
  std::array<int, 2> water_gained{0, 0};
  for (int i = 0; i < 2; ++i) {
    if (joint_action[i] < 5) continue;
    const int j = 1 - i;
    if (Chebyshev(agents_[i].position, agents_[j].position) > 1) continue;
    damage[j] += rng_.Bernoulli(config_.double_damage_probability) ? 2 : 1;
    const int food = std::min(1, agents_[j].food);
    const int water = std::min(1, agents_[j].water);
    food_lost[j] += food;
    water_lost[j] += water;
    if (config_.steal_transfers) {
      food_gained[i] += food;
      water_gained[i] += water;
    }
  }
  for (int i = 0; i < 2; ++i) {
    AgentState& a = agents_[i];
    a.health -= damage[i];
    a.food = std::clamp(a.food - food_lost[i] + food_gained[i], 0, config_.capacity);
    a.water = std::clamp(a.water - water_lost[i] + water_gained[i], 0, config_.capacity);
  }

  // Supply decay, then health.
  for (AgentState& a : agents_) {
    a.food = std::max(0, a.food - 1);
    a.water = std::max(0, a.water - 1);
    if (a.food == 0) --a.health;
    if (a.water == 0) --a.health;
    if (a.food > config_.regen_threshold && a.water > config_.regen_threshold) {
      ++a.health;
    }
    a.health = std::clamp(a.health, 0, config_.max_health);
  }

  StepResult result;
  result.rewards = {0.0, 0.0};
  result.terminated = {false, false};
  ++time_step_;
  for (int i = 0; i < 2; ++i) {
    AgentState& a = agents_[i];
    a.previous_action = joint_action[i];
    ++a.steps_alive;
    if (a.health <= 0) {
      result.rewards[i] = -1.0;
      result.terminated[i] = true;
    } else if (a.steps_alive >= config_.max_lifetime) {
      result.rewards[i] = 1.0;
      result.terminated[i] = true;
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (!result.terminated[i]) continue;
    completed_lives_[i].push_back(agents_[i].steps_alive);
    Respawn(i);
  }
  result.done = time_step_ >= config_.horizon;
  FillObservations(result);
  return result;
}

void Eldorado::AppendAgentFeatures(int i, std::vector<double>& out) const {
  const AgentState& a = agents_[i];
  out.push_back(static_cast<double>(a.position.row) / (config_.height - 1));
  out.push_back(static_cast<double>(a.position.col) / (config_.width - 1));
  out.push_back(static_cast<double>(a.health) / config_.max_health);
  out.push_back(static_cast<double>(a.food) / config_.capacity);
  out.push_back(static_cast<double>(a.water) / config_.capacity);
  for (int m = 0; m < 5; ++m) {
    out.push_back(a.previous_action % 5 == m ? 1.0 : 0.0);
  }
  out.push_back(a.previous_action >= 5 ? 1.0 : 0.0);
  out.push_back(static_cast<double>(a.steps_alive) / config_.max_lifetime);
}

void Eldorado::AppendTileFeatures(std::vector<double>& out) const {
  for (int k = 0; k < 2; ++k) {
    out.push_back(recharge_[k] == 0 ? 1.0 : 0.0);
    out.push_back(static_cast<double>(recharge_[k]) /
                  std::max(1, config_.recharge_turns));
  }
}

std::vector<double> Eldorado::Observe(int agent) const {
  if (agent < 0 || agent >= 2) throw DomainError("Eldorado: bad agent index");
  std::vector<double> out;
  out.reserve(kObservationSize);
  AppendAgentFeatures(agent, out);
  AppendAgentFeatures(1 - agent, out);
  AppendTileFeatures(out);
  return out;
}

std::vector<double> Eldorado::GlobalState() const {
  std::vector<double> out;
  out.reserve(kObservationSize);
  AppendAgentFeatures(0, out);
  AppendAgentFeatures(1, out);
  AppendTileFeatures(out);
  return out;
}

std::vector<double> Eldorado::EpisodeScores() const {
  std::vector<double> scores(2);
  for (int i = 0; i < 2; ++i) {
    scores[i] = completed_lives_[i].empty() ? agents_[i].steps_alive
                                            : completed_lives_[i].front();
  }
  return scores;
}

std::unique_ptr<Environment> Eldorado::Clone() const {
  return std::make_unique<Eldorado>(*this);
}

}  // namespace barocco
