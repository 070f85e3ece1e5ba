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

#include "barocco/envs/toy_games.h"

#include <cmath>

#include "barocco/common/errors.h"

namespace barocco {

void ToyAllocator::Reset() {
  time_step_ = 0;
  last_rewarded_.reset();
}

std::array<double, 2> ToyAllocator::Step(int agent) {
  if (done()) throw DomainError("ToyAllocator: episode already finished");
  if (agent != 0 && agent != 1) {
    throw DomainError("ToyAllocator: recipient must be 0 or 1");
  }
  std::array<double, 2> rewards{0.0, 0.0};
  rewards[agent] = last_rewarded_ == agent ? 2.0 : 1.0;
  last_rewarded_ = agent;
  ++time_step_;
  return rewards;
}

std::vector<AllocatorOutcome> EnumerateAllocatorOutcomes(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError("EnumerateAllocatorOutcomes: gamma must lie in [0, 1)");
  }
  std::vector<AllocatorOutcome> outcomes;
  const std::array<std::array<int, 2>, 4> policies = {
      {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  for (int option = 0; option < 4; ++option) {
    AllocatorOutcome out;
    out.option = option + 1;
    out.recipients = policies[option];
    ToyAllocator env;
    env.Reset();
    double discount = 1.0;
    while (!env.done()) {
      const int t = env.time_step();
      const std::array<double, 2> r = env.Step(policies[option][t]);
      for (int i = 0; i < 2; ++i) {
        out.discounted_rewards[i][t] = discount * r[i];
        out.values[i] += discount * r[i];
      }
      out.short_sum += discount * SocialWelfare(SwChoice::kSum, r);
      out.short_min += discount * SocialWelfare(SwChoice::kMin, r);
      discount *= gamma;
    }
    out.long_sum = SocialWelfare(SwChoice::kSum, out.values);
    out.long_min = SocialWelfare(SwChoice::kMin, out.values);
    outcomes.push_back(out);
  }
  return outcomes;
}

TerminationToy::TerminationToy(int t1, int t2) : termination_steps_{t1, t2} {
  if (!(0 < t1 && t1 < t2)) {
    throw DomainError("TerminationToy: requires 0 < t1 < t2");
  }
}

std::array<double, 2> TerminationToy::Step() {
  std::array<double, 2> rewards{0.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    if (alive_[i] && time_step_ == termination_steps_[i]) {
      rewards[i] = -1.0;
      alive_[i] = false;
    }
  }
  ++time_step_;
  return rewards;
}

namespace {

void CheckTerminationArgs(int t1, int t2, double gamma) {
  if (!(0 < t1 && t1 < t2)) {
    throw DomainError("termination toy: requires 0 < t1 < t2");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("termination toy: gamma must lie in (0, 1)");
  }
}

}  // namespace

TerminationValues TerminationToyValues(int t1, int t2, double gamma) {
  CheckTerminationArgs(t1, t2, gamma);
  const double g1 = std::pow(gamma, t1);
  const double g2 = std::pow(gamma, t2);
  TerminationValues v;
  v.selfish = {-g1, -g2};
  v.short_term = {-g1, -(g1 + g2)};
  v.long_term = {-(g1 + g2), -(g1 + g2)};
  return v;
}

TerminationValues SimulateTerminationToy(int t1, int t2, double gamma) {
  CheckTerminationArgs(t1, t2, gamma);
  TerminationToy env(t1, t2);
  TerminationValues v;
  double discount = 1.0;
  while (!env.done()) {
    // Agents alive at the start of this step still accumulate rewards.
    const std::array<bool, 2> was_alive = env.alive();
    const std::array<double, 2> r = env.Step();
    const double common = SocialWelfare(SwChoice::kSum, r);
    for (int i = 0; i < 2; ++i) {
      if (!was_alive[i]) continue;
      v.selfish[i] += discount * r[i];
      v.short_term[i] += discount * common;
    }
    discount *= gamma;
  }
  const double long_term = SocialWelfare(SwChoice::kSum, v.selfish);
  v.long_term = {long_term, long_term};
  return v;
}

}  // namespace barocco
