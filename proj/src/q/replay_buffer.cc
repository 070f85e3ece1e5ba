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

#include "barocco/q/replay_buffer.h"

#include <algorithm>
#include <cmath>

#include "barocco/common/errors.h"

namespace barocco {

SumTree::SumTree(std::size_t capacity) : capacity_(capacity) {
  leaves_ = 1;
  while (leaves_ < capacity_) leaves_ *= 2;
  nodes_.assign(2 * leaves_, 0.0);
}

void SumTree::Set(std::size_t index, double priority) {
  if (index >= capacity_) throw DomainError("SumTree: index out of range");
  if (!(priority >= 0.0) || !std::isfinite(priority)) {
    throw NumericError("SumTree: priority must be finite and nonnegative");
  }
  std::size_t node = leaves_ + index;
  nodes_[node] = priority;
  for (node /= 2; node >= 1; node /= 2) {
    nodes_[node] = nodes_[2 * node] + nodes_[2 * node + 1];
  }
}

std::size_t SumTree::Find(double mass) const {
  std::size_t node = 1;
  while (node < leaves_) {
    const double left = nodes_[2 * node];
    if (mass < left || nodes_[2 * node + 1] <= 0.0) {
      node = 2 * node;
    } else {
      mass -= left;
      node = 2 * node + 1;
    }
  }
  std::size_t index = node - leaves_;
  // Rounding can land on an empty leaf; walk back to a weighted one.
  while (index > 0 && nodes_[leaves_ + index] <= 0.0) --index;
  return index;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity, int num_agents,
                           int observation_size, int state_size,
                           int num_consumers, double priority_exponent)
    : capacity_(capacity),
      num_agents_(num_agents),
      observation_size_(observation_size),
      state_size_(state_size),
      priority_exponent_(priority_exponent) {
  if (capacity_ < 2) throw ConfigError("ReplayBuffer: capacity must be >= 2");
  if (num_agents_ < 1 || num_consumers < 1) {
    throw ConfigError("ReplayBuffer: need agents and consumers");
  }
  if (priority_exponent_ < 0.0) {
    throw ConfigError("ReplayBuffer: priority exponent must be >= 0");
  }
  if (prioritized()) {
    trees_.assign(num_consumers, SumTree(capacity_));
    max_priority_.assign(num_consumers, 1.0);
  }
}

std::size_t ReplayBuffer::Slot(std::uint64_t id) const {
  if (!Contains(id)) throw DomainError("ReplayBuffer: id not stored");
  return static_cast<std::size_t>(id % capacity_);
}

bool ReplayBuffer::HasNext(std::uint64_t id) const {
  return EpisodeEnd(id) || id + 1 < next_id_;
}

std::size_t ReplayBuffer::num_sampleable() const {
  if (size_ == 0) return 0;
  return HasNext(newest_id()) ? size_ : size_ - 1;
}

void ReplayBuffer::Add(const Experience& e) {
  const auto n = static_cast<std::size_t>(num_agents_);
  if (e.state.size() != static_cast<std::size_t>(state_size_) ||
      e.observations.size() != n || e.actions.size() != n ||
      e.rewards.size() != n || e.terminated.size() != n) {
    throw ShapeError("ReplayBuffer: experience does not match buffer shape");
  }
  for (const auto& o : e.observations) {
    if (o.size() != static_cast<std::size_t>(observation_size_)) {
      throw ShapeError("ReplayBuffer: observation width mismatch");
    }
  }
  if (e.episode_end && (e.next_state.size() != e.state.size() ||
                        e.next_observations.size() != n)) {
    throw ShapeError("ReplayBuffer: episode end needs next state and observations");
  }
  const std::size_t slot = static_cast<std::size_t>(next_id_ % capacity_);
  if (slot == epsilons_.size()) {
    states_.resize(states_.size() + state_size_);
    observations_.resize(observations_.size() + n * observation_size_);
    actions_.resize(actions_.size() + n);
    rewards_.resize(rewards_.size() + n);
    terminated_.resize(terminated_.size() + n);
    episode_end_.push_back(0);
    epsilons_.push_back(0.0);
    final_states_.emplace_back();
    final_observations_.emplace_back();
  }
  std::copy(e.state.begin(), e.state.end(),
            states_.begin() + slot * state_size_);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(e.observations[i].begin(), e.observations[i].end(),
              observations_.begin() + (slot * n + i) * observation_size_);
    actions_[slot * n + i] = e.actions[i];
    rewards_[slot * n + i] = e.rewards[i];
    terminated_[slot * n + i] = e.terminated[i] ? 1 : 0;
  }
  episode_end_[slot] = e.episode_end ? 1 : 0;
  epsilons_[slot] = e.epsilon;
  final_states_[slot].clear();
  final_observations_[slot].clear();
  if (e.episode_end) {
    final_states_[slot].assign(e.next_state.begin(), e.next_state.end());
    for (const auto& o : e.next_observations) {
      if (o.size() != static_cast<std::size_t>(observation_size_)) {
        throw ShapeError("ReplayBuffer: next observation width mismatch");
      }
      final_observations_[slot].insert(final_observations_[slot].end(),
                                       o.begin(), o.end());
    }
  }
  const bool had_previous = size_ > 0;
  const std::uint64_t previous = next_id_ - 1;
  ++next_id_;
  size_ = std::min(size_ + 1, capacity_);
  if (prioritized()) {
    for (std::size_t c = 0; c < trees_.size(); ++c) {
      if (had_previous && Contains(previous) && !EpisodeEnd(previous)) {
        trees_[c].Set(Slot(previous), max_priority_[c]);
      }
      trees_[c].Set(slot, e.episode_end ? max_priority_[c] : 0.0);
    }
  }
}

std::vector<std::uint64_t> ReplayBuffer::Sample(int consumer, int batch,
                                                Rng& rng) const {
  const std::size_t available = num_sampleable();
  if (available == 0) throw UsageError("ReplayBuffer: nothing to sample");
  std::vector<std::uint64_t> ids(batch);
  if (!prioritized()) {
    for (auto& id : ids) id = oldest_id() + rng.UniformInt(available);
    return ids;
  }
  const SumTree& tree = trees_.at(consumer);
  for (auto& id : ids) {
    const std::size_t slot = tree.Find(rng.Uniform() * tree.Total());
    // Map the slot back to its id within the stored window.
    const std::uint64_t base = newest_id() - newest_id() % capacity_;
    id = base + slot;
    if (id > newest_id()) id -= capacity_;
  }
  return ids;
}

std::vector<double> ReplayBuffer::ImportanceWeights(
    int consumer, std::span<const std::uint64_t> ids, double beta) const {
  std::vector<double> weights(ids.size(), 1.0);
  if (!prioritized()) return weights;
  const SumTree& tree = trees_.at(consumer);
  const double total = tree.Total();
  const double count = static_cast<double>(num_sampleable());
  double max_weight = 0.0;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const double p = tree.Get(Slot(ids[k])) / total;
    weights[k] = std::pow(count * p, -beta);
    max_weight = std::max(max_weight, weights[k]);
  }
  for (double& w : weights) w /= max_weight;
  return weights;
}

void ReplayBuffer::UpdatePriorities(int consumer,
                                    std::span<const std::uint64_t> ids,
                                    std::span<const double> td_errors) {
  if (!prioritized()) return;
  if (ids.size() != td_errors.size()) {
    throw ShapeError("UpdatePriorities: ids and errors differ in length");
  }
  SumTree& tree = trees_.at(consumer);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!Contains(ids[k])) continue;
    const double p = std::pow(std::abs(td_errors[k]) + 1e-6, priority_exponent_);
    tree.Set(Slot(ids[k]), p);
    max_priority_[consumer] = std::max(max_priority_[consumer], p);
  }
}

std::vector<double> ReplayBuffer::State(std::uint64_t id) const {
  const auto begin = states_.begin() + Slot(id) * state_size_;
  return std::vector<double>(begin, begin + state_size_);
}

std::vector<double> ReplayBuffer::Observation(std::uint64_t id, int agent) const {
  const auto begin = observations_.begin() +
                     (Slot(id) * num_agents_ + agent) * observation_size_;
  return std::vector<double>(begin, begin + observation_size_);
}

std::vector<double> ReplayBuffer::NextState(std::uint64_t id) const {
  if (EpisodeEnd(id)) {
    const auto& f = final_states_[Slot(id)];
    return std::vector<double>(f.begin(), f.end());
  }
  if (!HasNext(id)) throw UsageError("ReplayBuffer: successor not stored yet");
  return State(id + 1);
}

std::vector<double> ReplayBuffer::NextObservation(std::uint64_t id,
                                                  int agent) const {
  if (EpisodeEnd(id)) {
    const auto begin =
        final_observations_[Slot(id)].begin() + agent * observation_size_;
    return std::vector<double>(begin, begin + observation_size_);
  }
  if (!HasNext(id)) throw UsageError("ReplayBuffer: successor not stored yet");
  return Observation(id + 1, agent);
}

double ReplayBuffer::Epsilon(std::uint64_t id) const { return epsilons_[Slot(id)]; }

double ReplayBuffer::NextEpsilon(std::uint64_t id) const {
  return EpisodeEnd(id) ? Epsilon(id) : Epsilon(id + 1);
}

int ReplayBuffer::Action(std::uint64_t id, int agent) const {
  return actions_[Slot(id) * num_agents_ + agent];
}

std::span<const double> ReplayBuffer::Rewards(std::uint64_t id) const {
  return {rewards_.data() + Slot(id) * num_agents_,
          static_cast<std::size_t>(num_agents_)};
}

bool ReplayBuffer::Terminated(std::uint64_t id, int agent) const {
  return terminated_[Slot(id) * num_agents_ + agent] != 0;
}

bool ReplayBuffer::AnyTerminated(std::uint64_t id) const {
  for (int i = 0; i < num_agents_; ++i) {
    if (Terminated(id, i)) return true;
  }
  return false;
}

bool ReplayBuffer::EpisodeEnd(std::uint64_t id) const {
  return episode_end_[Slot(id)] != 0;
}

NStepReturn ReplayBuffer::NStep(std::uint64_t id, int agent, int n,
                                double gamma, double lambda, SwChoice sw) const {
  if (n < 1) throw ConfigError("NStep: n must be >= 1");
  if (!HasNext(id)) throw UsageError("NStep: record is not sampleable");
  NStepReturn out;
  double discount = 1.0;
  std::uint64_t current = id;
  for (int k = 0; k < n; ++k) {
    if (k > 0 && !HasNext(current)) break;
    out.discounted_return +=
        discount * CrsReward(agent, Rewards(current), lambda, sw);
    discount *= gamma;
    out.steps = k + 1;
    out.bootstrap_id = current;
    if (Terminated(current, agent)) {
      out.bootstrap_discount = 0.0;
      return out;
    }
    if (EpisodeEnd(current) || k + 1 == n) break;
    ++current;
  }
  out.bootstrap_discount = discount;
  return out;
}

}  // namespace barocco
