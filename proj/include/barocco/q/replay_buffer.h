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

#ifndef BAROCCO_Q_REPLAY_BUFFER_H_
#define BAROCCO_Q_REPLAY_BUFFER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "barocco/common/random.h"
#include "barocco/welfare/welfare.h"

namespace barocco {

// One environment step as handed to the buffer.
struct Experience {
  std::vector<double> state;
  std::vector<std::vector<double>> observations;
  std::vector<int> actions;
  std::vector<double> rewards;
  std::vector<bool> terminated;
  bool episode_end = false;
  // Only read when episode_end; otherwise the next record supplies them.
  std::vector<double> next_state;
  std::vector<std::vector<double>> next_observations;
  double epsilon = 0.0;  // exploration rate when the step was taken
};

// Agent-local n-step return. bootstrap_discount is 0 when the chain ended in
// the agent's termination.
struct NStepReturn {
  double discounted_return = 0.0;
  double bootstrap_discount = 0.0;
  std::uint64_t bootstrap_id = 0;  // NextObservation(bootstrap_id, agent)
  int steps = 0;
};

class SumTree {
 public:
  explicit SumTree(std::size_t capacity = 0);
  std::size_t capacity() const { return capacity_; }
  void Set(std::size_t index, double priority);
  double Get(std::size_t index) const { return nodes_[leaves_ + index]; }
  double Total() const { return nodes_[1]; }
  // Leaf whose cumulative interval contains mass, for mass in [0, Total()).
  std::size_t Find(double mass) const;

 private:
  std::size_t capacity_;
  std::size_t leaves_;
  std::vector<double> nodes_;
};

// Ring of experiences with stable ids (insertion counters). Observations
// and states are stored in single precision. The newest record is not
// sampleable until its successor arrives, unless it ends the episode.
//
// Each consumer (selfish learner per agent, social learner) samples
// independently and, with prioritization on, keeps its own priorities.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, int num_agents, int observation_size,
               int state_size, int num_consumers, double priority_exponent);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return size_; }
  std::size_t num_sampleable() const;
  bool prioritized() const { return priority_exponent_ > 0.0; }
  std::uint64_t oldest_id() const { return next_id_ - size_; }
  std::uint64_t newest_id() const { return next_id_ - 1; }
  bool Contains(std::uint64_t id) const {
    return size_ > 0 && id >= oldest_id() && id < next_id_;
  }

  void Add(const Experience& experience);

  std::vector<std::uint64_t> Sample(int consumer, int batch, Rng& rng) const;
  // Normalized importance weights (N P(i))^-beta / max; all 1 when uniform.
  std::vector<double> ImportanceWeights(int consumer,
                                        std::span<const std::uint64_t> ids,
                                        double beta) const;
  void UpdatePriorities(int consumer, std::span<const std::uint64_t> ids,
                        std::span<const double> td_errors);

  std::vector<double> State(std::uint64_t id) const;
  std::vector<double> Observation(std::uint64_t id, int agent) const;
  std::vector<double> NextState(std::uint64_t id) const;
  std::vector<double> NextObservation(std::uint64_t id, int agent) const;
  double Epsilon(std::uint64_t id) const;
  double NextEpsilon(std::uint64_t id) const;
  int Action(std::uint64_t id, int agent) const;
  std::span<const double> Rewards(std::uint64_t id) const;
  bool Terminated(std::uint64_t id, int agent) const;
  bool AnyTerminated(std::uint64_t id) const;
  bool EpisodeEnd(std::uint64_t id) const;

  // Chain of at most n steps from id, cut at the agent's termination, the
  // episode end, or the newest record. Rewards are CRS-mixed (identity at
  // lambda 0).
  NStepReturn NStep(std::uint64_t id, int agent, int n, double gamma,
                    double lambda, SwChoice sw) const;

 private:
  std::size_t Slot(std::uint64_t id) const;
  bool HasNext(std::uint64_t id) const;
  double MaxPriority(int consumer) const { return max_priority_[consumer]; }

  std::size_t capacity_;
  int num_agents_;
  int observation_size_;
  int state_size_;
  double priority_exponent_;
  std::size_t size_ = 0;
  std::uint64_t next_id_ = 0;

  std::vector<float> states_;
  std::vector<float> observations_;
  std::vector<int> actions_;
  std::vector<double> rewards_;
  std::vector<std::uint8_t> terminated_;
  std::vector<std::uint8_t> episode_end_;
  std::vector<double> epsilons_;
  std::vector<std::vector<float>> final_states_;
  std::vector<std::vector<float>> final_observations_;

  std::vector<SumTree> trees_;
  std::vector<double> max_priority_;
};

}  // namespace barocco

#endif  // BAROCCO_Q_REPLAY_BUFFER_H_
