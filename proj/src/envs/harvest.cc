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

#include "barocco/envs/harvest.h"

#include <algorithm>

#include "barocco/common/errors.h"

namespace barocco {
namespace {

constexpr std::array<std::array<int, 2>, 4> kDirections = {
    {{-1, 0}, {0, 1}, {1, 0}, {0, -1}}};

enum Action {
  kForward = 0,
  kBackward = 1,
  kStrafeLeft = 2,
  kStrafeRight = 3,
  kTurnLeft = 4,
  kTurnRight = 5,
  kStay = 6,
  kFire = 7,
};

}  // namespace

std::vector<std::string> HarvestLiteMap() {
  return {
      "@@@@@@@@@",
      "@P     P@",
      "@  AAA  @",
      "@ AAAAA @",
      "@  AAA  @",
      "@       @",
      "@@@@@@@@@",
  };
}

std::vector<std::string> HarvestFullMap() {
  return {
      "@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@",
      "@ P   P      A    P AAAAA    P  A P  @",
      "@  P     A P AA    P    AAA    A  A  @",
      "@     A AAA  AAA    A    A AA AAAA   @",
      "@ A  AAA A    A  A AAA  A  A   A A   @",
      "@AAA  A A    A  AAA A  AAA        A P@",
      "@ A A  AAA  AAA  A A    A AA   AA AA @",
      "@  A A  AAA    A A  AAA    AAA  A    @",
      "@   AAA  A      AAA  A    AAAA       @",
      "@ P  A       A  A AAA    A  A      P @",
      "@A  AAA  A  A  AAA A    AAAA     P   @",
      "@    A A   AAA  A  A      A AA   A  P@",
      "@     AAA   A A  AAA      AA   AAA P @",
      "@ A    A     AAA  A  P          A    @",
      "@       P     A         P  P P     P @",
      "@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@@",
  };
}

HarvestConfig HarvestLiteConfig() {
  HarvestConfig config;
  config.map = HarvestLiteMap();
  config.num_agents = 2;
  config.horizon = 100;
  config.view_size = 7;
  config.beam_length = 3;
  return config;
}

HarvestConfig HarvestFullConfig() {
  HarvestConfig config;
  config.map = HarvestFullMap();
  config.num_agents = 5;
  config.horizon = 1000;
  config.view_size = 15;
  config.beam_length = 5;
  return config;
}

Harvest::Harvest(HarvestConfig config) : config_(std::move(config)) {
  if (config_.map.empty() || config_.map.front().empty()) {
    throw ConfigError("Harvest: empty map");
  }
  if (config_.view_size <= 0 || config_.view_size % 2 == 0) {
    throw ConfigError("Harvest: view_size must be a positive odd number");
  }
  if (config_.num_agents < 1) throw ConfigError("Harvest: need at least one agent");
  for (std::size_t k = 1; k < config_.regrowth_probabilities.size(); ++k) {
    if (config_.regrowth_probabilities[k] < config_.regrowth_probabilities[k - 1]) {
      throw ConfigError("Harvest: regrowth probabilities must be nondecreasing");
    }
  }
  height_ = static_cast<int>(config_.map.size());
  width_ = static_cast<int>(config_.map.front().size());
  const std::size_t cells = static_cast<std::size_t>(height_) * width_;
  wall_.assign(cells, false);
  apple_cell_.assign(cells, false);
  for (int r = 0; r < height_; ++r) {
    if (static_cast<int>(config_.map[r].size()) != width_) {
      throw ConfigError("Harvest: ragged map rows");
    }
    for (int c = 0; c < width_; ++c) {
      switch (config_.map[r][c]) {
        case '@':
          wall_[Index(r, c)] = true;
          break;
        case 'A':
          apple_cell_[Index(r, c)] = true;
          break;
        case 'P':
          spawns_.push_back({r, c});
          break;
        case ' ':
          break;
        default:
          throw ConfigError(std::string("Harvest: unknown map symbol '") +
                            config_.map[r][c] + "'");
      }
    }
  }
  if (static_cast<int>(spawns_.size()) < config_.num_agents) {
    throw ConfigError("Harvest: fewer spawn points than agents");
  }
  Reset(0);
}

bool Harvest::is_wall(int row, int col) const {
  if (row < 0 || row >= height_ || col < 0 || col >= width_) return true;
  return wall_[Index(row, col)];
}

int Harvest::num_apples() const {
  return static_cast<int>(std::count(apples_.begin(), apples_.end(), true));
}

int Harvest::num_apple_cells() const {
  return static_cast<int>(std::count(apple_cell_.begin(), apple_cell_.end(), true));
}

void Harvest::set_apple(int row, int col, bool present) {
  if (present && !apple_cell_[Index(row, col)]) {
    throw DomainError("Harvest: apples only grow on apple cells");
  }
  apples_[Index(row, col)] = present;
}

int Harvest::observation_size() const {
  return kNumPlanes * config_.view_size * config_.view_size;
}

int Harvest::state_size() const {
  return 2 * height_ * width_ + 6 * config_.num_agents;
}

void Harvest::Reset(std::uint64_t seed) {
  rng_ = Rng(seed, /*stream=*/0x4A57);
  time_step_ = 0;
  apples_ = apple_cell_;
  fire_.assign(apple_cell_.size(), 0);
  // Random distinct spawn points and orientations.
  std::vector<std::array<int, 2>> points = spawns_;
  for (int i = static_cast<int>(points.size()) - 1; i > 0; --i) {
    std::swap(points[i], points[rng_.UniformInt(i + 1)]);
  }
  agents_.assign(config_.num_agents, AgentState{});
  for (int i = 0; i < config_.num_agents; ++i) {
    agents_[i].row = points[i][0];
    agents_[i].col = points[i][1];
    agents_[i].orientation = rng_.UniformInt(4);
  }
}

bool Harvest::Occupied(int row, int col, int except) const {
  for (int j = 0; j < config_.num_agents; ++j) {
    if (j != except && agents_[j].row == row && agents_[j].col == col) return true;
  }
  return false;
}

int Harvest::NearbyApples(int row, int col) const {
  const int r = config_.regrowth_radius;
  int count = 0;
  for (int dr = -r; dr <= r; ++dr) {
    for (int dc = -r; dc <= r; ++dc) {
      if ((dr == 0 && dc == 0) || dr * dr + dc * dc > r * r) continue;
      const int rr = row + dr;
      const int cc = col + dc;
      if (rr < 0 || rr >= height_ || cc < 0 || cc >= width_) continue;
      if (apples_[Index(rr, cc)]) ++count;
    }
  }
  return count;
}

double Harvest::RegrowthProbability(int nearby) const {
  const auto& p = config_.regrowth_probabilities;
  if (nearby <= 0) return p[0];
  if (nearby <= 2) return p[1];
  if (nearby <= 4) return p[2];
  return p[3];
}

StepResult Harvest::Step(std::span<const int> joint_action) {
  CheckJointAction(joint_action);
  if (time_step_ >= config_.horizon) {
    throw UsageError("Harvest: Step() after the episode ended");
  }
  const int n = config_.num_agents;
  StepResult result;
  result.rewards.assign(n, 0.0);
  result.terminated.assign(n, false);

  // Turns and moves.
  std::vector<std::array<int, 2>> current(n);
  std::vector<std::array<int, 2>> proposed(n);
  for (int i = 0; i < n; ++i) {
    AgentState& a = agents_[i];
    current[i] = {a.row, a.col};
    proposed[i] = current[i];
    int heading = -1;
    switch (joint_action[i]) {
      case kForward:
        heading = a.orientation;
        break;
      case kBackward:
        heading = (a.orientation + 2) % 4;
        break;
      case kStrafeLeft:
        heading = (a.orientation + 3) % 4;
        break;
      case kStrafeRight:
        heading = (a.orientation + 1) % 4;
        break;
      case kTurnLeft:
        a.orientation = (a.orientation + 3) % 4;
        break;
      case kTurnRight:
        a.orientation = (a.orientation + 1) % 4;
        break;
      default:
        break;
    }
    if (heading >= 0) {
      const int r = a.row + kDirections[heading][0];
      const int c = a.col + kDirections[heading][1];
      if (!is_wall(r, c)) proposed[i] = {r, c};
    }
  }
  // Every mover into a contested cell stays put.
  const std::vector<std::array<int, 2>> wanted = proposed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (proposed[i] == current[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const bool contested = wanted[i] == wanted[j] || proposed[i] == proposed[j];
        const bool blocked = proposed[i] == current[j] &&
                             (proposed[j] == current[j] || proposed[j] == current[i]);
        if (contested || blocked) {
          proposed[i] = current[i];
          changed = true;
          break;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const bool moved = proposed[i] != current[i];
    agents_[i].row = proposed[i][0];
    agents_[i].col = proposed[i][1];
    if (moved && fire_[Index(proposed[i][0], proposed[i][1])] > 0) {
      result.rewards[i] += config_.fire_penalty;
    }
  }

  // Collection.
  for (int i = 0; i < n; ++i) {
    const std::size_t idx = Index(agents_[i].row, agents_[i].col);
    if (apples_[idx]) {
      apples_[idx] = false;
      ++agents_[i].apples;
      result.rewards[i] += config_.apple_reward;
    }
  }

  // Old fire expires; new beams.
  for (int& f : fire_) f = std::max(0, f - 1);
  for (int i = 0; i < n; ++i) {
    if (joint_action[i] != kFire) continue;
    const AgentState& a = agents_[i];
    const auto& d = kDirections[a.orientation];
    for (int k = 1; k <= config_.beam_length; ++k) {
      const int r = a.row + k * d[0];
      const int c = a.col + k * d[1];
      if (is_wall(r, c)) break;
      int hit = -1;
      for (int j = 0; j < n; ++j) {
        if (j != i && agents_[j].row == r && agents_[j].col == c) hit = j;
      }
      if (hit >= 0) {
        result.rewards[hit] += config_.hit_penalty;
        ++agents_[hit].times_hit;
        break;
      }
      fire_[Index(r, c)] = 1;
    }
  }

  // Regrowth from the pre-regrowth apple configuration.
  std::vector<std::size_t> grown;
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      const std::size_t idx = Index(r, c);
      if (!apple_cell_[idx] || apples_[idx] || Occupied(r, c, -1)) continue;
      const double p = RegrowthProbability(NearbyApples(r, c));
      if (p > 0.0 && rng_.Bernoulli(p)) grown.push_back(idx);
    }
  }
  for (std::size_t idx : grown) apples_[idx] = true;

  ++time_step_;
  result.done = time_step_ >= config_.horizon;
  FillObservations(result);
  return result;
}

std::vector<double> Harvest::Observe(int agent) const {
  if (agent < 0 || agent >= config_.num_agents) {
    throw DomainError("Harvest: bad agent index");
  }
  const int v = config_.view_size;
  const int half = v / 2;
  const std::size_t plane = static_cast<std::size_t>(v) * v;
  std::vector<double> out(kNumPlanes * plane, 0.0);
  const AgentState& a = agents_[agent];
  const auto& ahead_dir = kDirections[a.orientation];
  const auto& right_dir = kDirections[(a.orientation + 1) % 4];
  for (int vr = 0; vr < v; ++vr) {
    for (int vc = 0; vc < v; ++vc) {
      const int ahead = half - vr;
      const int right = vc - half;
      const int r = a.row + ahead * ahead_dir[0] + right * right_dir[0];
      const int c = a.col + ahead * ahead_dir[1] + right * right_dir[1];
      const std::size_t k = static_cast<std::size_t>(vr) * v + vc;
      if (is_wall(r, c)) {
        out[3 * plane + k] = 1.0;
        continue;
      }
      if (apples_[Index(r, c)]) out[k] = 1.0;
      if (Occupied(r, c, agent)) out[plane + k] = 1.0;
      if (fire_[Index(r, c)] > 0) out[2 * plane + k] = 1.0;
    }
  }
  return out;
}

std::vector<double> Harvest::GlobalState() const {
  std::vector<double> out;
  out.reserve(state_size());
  for (bool apple : apples_) out.push_back(apple ? 1.0 : 0.0);
  for (int f : fire_) out.push_back(f > 0 ? 1.0 : 0.0);
  for (const AgentState& a : agents_) {
    out.push_back(static_cast<double>(a.row) / std::max(1, height_ - 1));
    out.push_back(static_cast<double>(a.col) / std::max(1, width_ - 1));
    for (int o = 0; o < 4; ++o) out.push_back(a.orientation == o ? 1.0 : 0.0);
  }
  return out;
}

std::vector<double> Harvest::EpisodeScores() const {
  std::vector<double> scores;
  for (const AgentState& a : agents_) scores.push_back(a.apples);
  return scores;
}

std::unique_ptr<Environment> Harvest::Clone() const {
  return std::make_unique<Harvest>(*this);
}

}  // namespace barocco
