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

#ifndef BAROCCO_ENVS_TOY_GAMES_H_
#define BAROCCO_ENVS_TOY_GAMES_H_

#include <array>
#include <optional>
#include <vector>

#include "barocco/welfare/welfare.h"

namespace barocco {

// A controller hands a unit reward to one of two agents at each of two
// time steps; rewarding the same agent twice doubles the second reward.
class ToyAllocator {
 public:
  void Reset();
  // Rewards of both agents for giving the reward to `agent` (0 or 1).
  // Throws DomainError after the episode ended or for a bad agent index.
  std::array<double, 2> Step(int agent);

  int time_step() const { return time_step_; }
  std::optional<int> last_rewarded() const { return last_rewarded_; }
  bool done() const { return time_step_ >= 2; }

 private:
  int time_step_ = 0;
  std::optional<int> last_rewarded_;
};

struct AllocatorOutcome {
  // 1-based option number; options 1..4 reward agents (0,0), (0,1), (1,0),
  // (1,1) at the two steps.
  int option = 0;
  std::array<int, 2> recipients{};
  // Discounted reward streams of both agents.
  std::array<std::array<double, 2>, 2> discounted_rewards{};
  std::array<double, 2> values{};
  double short_sum = 0.0;
  double long_sum = 0.0;
  double short_min = 0.0;
  double long_min = 0.0;
};

// Runs every allocation policy through ToyAllocator; gamma in [0, 1).
std::vector<AllocatorOutcome> EnumerateAllocatorOutcomes(double gamma);

// Two agents whose only reward is -1 when they terminate at steps t1 < t2.
class TerminationToy {
 public:
  TerminationToy(int t1, int t2);

  std::array<double, 2> Step();
  std::array<bool, 2> alive() const { return alive_; }
  int time_step() const { return time_step_; }
  bool done() const { return !alive_[0] && !alive_[1]; }

 private:
  std::array<int, 2> termination_steps_;
  std::array<bool, 2> alive_{true, true};
  int time_step_ = 0;
};

struct TerminationValues {
  std::array<double, 2> selfish{};     // V_i
  std::array<double, 2> short_term{};  // V_i^{SW_S}, each over its own life
  std::array<double, 2> long_term{};   // V^{SW_L} = SW(V)
};

// Closed forms with SW = sum. Throws DomainError unless 0 < t1 < t2 and
// 0 < gamma < 1.
TerminationValues TerminationToyValues(int t1, int t2, double gamma);
// The same quantities accumulated from a TerminationToy rollout.
TerminationValues SimulateTerminationToy(int t1, int t2, double gamma);

}  // namespace barocco

#endif  // BAROCCO_ENVS_TOY_GAMES_H_
