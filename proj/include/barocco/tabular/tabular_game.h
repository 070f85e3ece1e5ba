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

#ifndef BAROCCO_TABULAR_TABULAR_GAME_H_
#define BAROCCO_TABULAR_TABULAR_GAME_H_

#include <cstdint>
#include <span>
#include <vector>

#include "barocco/common/random.h"
#include "barocco/welfare/welfare.h"

namespace barocco {

// Finite Markov game. Joint actions are indexed mixed-radix with agent 0 as
// the most significant digit.
struct TabularGame {
  int num_states = 0;
  std::vector<int> num_actions;  // per agent
  // transitions[s][joint][s'], rows sum to 1.
  std::vector<std::vector<std::vector<double>>> transitions;
  // rewards[s][joint][agent]
  std::vector<std::vector<std::vector<double>>> rewards;
  double gamma = 0.99;

  int num_agents() const { return static_cast<int>(num_actions.size()); }
  int num_joint_actions() const;
  int JointIndex(std::span<const int> actions) const;
  std::vector<int> JointActions(int joint) const;
  // Throws DomainError on inconsistent shapes or rows not summing to 1.
  void Validate() const;
};

// policies[agent][state][action]
using TabularPolicies = std::vector<std::vector<std::vector<double>>>;

struct PolicyValues {
  std::vector<std::vector<double>> selfish;  // [agent][state], V_i
  std::vector<double> short_term;            // [state], V^{SW_S}
  std::vector<double> long_term;             // [state], SW(V(s))
};

// Solves (I - gamma P_pi) V = r_pi for the given per-(state, joint action)
// reward. Throws NumericError when the system is singular.
std::vector<double> EvaluateReward(
    const TabularGame& game, const TabularPolicies& policies,
    const std::vector<std::vector<double>>& reward);

PolicyValues ExactPolicyEval(const TabularGame& game,
                             const TabularPolicies& policies, SwChoice sw);

// Max over agents and states of |V_i^mix - ((1 - lambda) V_i + lambda V^SW)|
// where V_i^mix evaluates the CRS reward directly; SW is the sum.
double FactorizationCheck(const TabularGame& game,
                          const TabularPolicies& policies, double lambda);

// Symmetric Dirichlet(1) transitions and policies, rewards uniform in [-1, 1].
TabularGame RandomTabularGame(Rng& rng, int num_states, int num_agents,
                              int num_actions, double gamma);
TabularPolicies RandomPolicies(const TabularGame& game, Rng& rng);

// The two-step allocator as a Markov game: agent 0 picks the recipient,
// agent 1 has a single no-op action. States: start, after rewarding agent 0,
// after rewarding agent 1, absorbing end.
TabularGame AllocatorGame(double gamma);
// Deterministic controller policy for an option's recipient pair.
TabularPolicies AllocatorPolicies(int first, int second);

}  // namespace barocco

#endif  // BAROCCO_TABULAR_TABULAR_GAME_H_
