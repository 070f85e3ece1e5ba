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

#include "barocco/tabular/tabular_game.h"

#include <Eigen/Dense>
#include <cmath>

#include "barocco/common/errors.h"

namespace barocco {

int TabularGame::num_joint_actions() const {
  int count = 1;
  for (int n : num_actions) count *= n;
  return count;
}

int TabularGame::JointIndex(std::span<const int> actions) const {
  if (actions.size() != num_actions.size()) {
    throw ShapeError("TabularGame: joint action has wrong agent count");
  }
  int joint = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] < 0 || actions[i] >= num_actions[i]) {
      throw DomainError("TabularGame: action out of range");
    }
    joint = joint * num_actions[i] + actions[i];
  }
  return joint;
}

std::vector<int> TabularGame::JointActions(int joint) const {
  std::vector<int> actions(num_actions.size());
  for (int i = num_agents() - 1; i >= 0; --i) {
    actions[i] = joint % num_actions[i];
    joint /= num_actions[i];
  }
  return actions;
}

void TabularGame::Validate() const {
  if (num_states <= 0 || num_actions.empty()) {
    throw DomainError("TabularGame: need states and agents");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw DomainError("TabularGame: gamma outside [0, 1]");
  }
  const int joints = num_joint_actions();
  if (static_cast<int>(transitions.size()) != num_states ||
      static_cast<int>(rewards.size()) != num_states) {
    throw DomainError("TabularGame: per-state tables have wrong size");
  }
  for (int s = 0; s < num_states; ++s) {
    if (static_cast<int>(transitions[s].size()) != joints ||
        static_cast<int>(rewards[s].size()) != joints) {
      throw DomainError("TabularGame: per-action tables have wrong size");
    }
    for (int j = 0; j < joints; ++j) {
      if (static_cast<int>(transitions[s][j].size()) != num_states ||
          static_cast<int>(rewards[s][j].size()) != num_agents()) {
        throw DomainError("TabularGame: transition or reward row has wrong size");
      }
      double total = 0.0;
      for (double p : transitions[s][j]) {
        if (p < 0.0) throw DomainError("TabularGame: negative probability");
        total += p;
      }
      if (std::abs(total - 1.0) > 1e-12) {
        throw DomainError("TabularGame: transition row does not sum to 1");
      }
    }
  }
}

namespace {

// pi(joint | s) as a product of independent agent policies.
std::vector<std::vector<double>> JointPolicy(const TabularGame& game,
                                             const TabularPolicies& policies) {
  if (static_cast<int>(policies.size()) != game.num_agents()) {
    throw ShapeError("policies: one policy per agent required");
  }
  std::vector<std::vector<double>> joint(
      game.num_states, std::vector<double>(game.num_joint_actions(), 1.0));
  for (int i = 0; i < game.num_agents(); ++i) {
    if (static_cast<int>(policies[i].size()) != game.num_states) {
      throw ShapeError("policies: one distribution per state required");
    }
  }
  for (int s = 0; s < game.num_states; ++s) {
    for (int j = 0; j < game.num_joint_actions(); ++j) {
      const std::vector<int> actions = game.JointActions(j);
      for (int i = 0; i < game.num_agents(); ++i) {
        if (static_cast<int>(policies[i][s].size()) != game.num_actions[i]) {
          throw ShapeError("policies: distribution has wrong action count");
        }
        joint[s][j] *= policies[i][s][actions[i]];
      }
    }
  }
  return joint;
}

}  // namespace

std::vector<double> EvaluateReward(
    const TabularGame& game, const TabularPolicies& policies,
    const std::vector<std::vector<double>>& reward) {
  game.Validate();
  const auto joint = JointPolicy(game, policies);
  const int n = game.num_states;
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (int s = 0; s < n; ++s) {
    for (int j = 0; j < game.num_joint_actions(); ++j) {
      const double p = joint[s][j];
      if (p == 0.0) continue;
      rhs(s) += p * reward[s][j];
      for (int t = 0; t < n; ++t) {
        system(s, t) -= game.gamma * p * game.transitions[s][j][t];
      }
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) {
    throw NumericError("EvaluateReward: singular Bellman system");
  }
  const Eigen::VectorXd v = lu.solve(rhs);
  return std::vector<double>(v.data(), v.data() + n);
}

PolicyValues ExactPolicyEval(const TabularGame& game,
                             const TabularPolicies& policies, SwChoice sw) {
  const int joints = game.num_joint_actions();
  PolicyValues out;
  std::vector<std::vector<double>> reward(game.num_states,
                                          std::vector<double>(joints));
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int s = 0; s < game.num_states; ++s) {
      for (int j = 0; j < joints; ++j) reward[s][j] = game.rewards[s][j][i];
    }
    out.selfish.push_back(EvaluateReward(game, policies, reward));
  }
  for (int s = 0; s < game.num_states; ++s) {
    for (int j = 0; j < joints; ++j) {
      reward[s][j] = SocialWelfare(sw, game.rewards[s][j]);
    }
  }
  out.short_term = EvaluateReward(game, policies, reward);
  std::vector<double> values(game.num_agents());
  for (int s = 0; s < game.num_states; ++s) {
    for (int i = 0; i < game.num_agents(); ++i) values[i] = out.selfish[i][s];
    out.long_term.push_back(SocialWelfare(sw, values));
  }
  return out;
}

double FactorizationCheck(const TabularGame& game,
                          const TabularPolicies& policies, double lambda) {
  CheckLambda(lambda);
  const PolicyValues base = ExactPolicyEval(game, policies, SwChoice::kSum);
  const int joints = game.num_joint_actions();
  std::vector<std::vector<double>> mixed(game.num_states,
                                         std::vector<double>(joints));
  double deviation = 0.0;
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int s = 0; s < game.num_states; ++s) {
      for (int j = 0; j < joints; ++j) {
        mixed[s][j] = CrsReward(i, game.rewards[s][j], lambda, SwChoice::kSum);
      }
    }
    const std::vector<double> direct = EvaluateReward(game, policies, mixed);
    for (int s = 0; s < game.num_states; ++s) {
      const double factored =
          Combine(base.selfish[i][s], base.short_term[s], lambda);
      deviation = std::max(deviation, std::abs(direct[s] - factored));
    }
  }
  return deviation;
}

namespace {

std::vector<double> Dirichlet(Rng& rng, int size) {
  std::vector<double> draw(size);
  double total = 0.0;
  for (double& x : draw) {
    x = rng.Gamma(1.0);
    total += x;
  }
  for (double& x : draw) x /= total;
  // Absorb rounding so the row sums to 1 within the validation tolerance.
  double rest = 1.0;
  for (int k = 0; k + 1 < size; ++k) rest -= draw[k];
  draw.back() = rest;
  return draw;
}

}  // namespace

TabularGame RandomTabularGame(Rng& rng, int num_states, int num_agents,
                              int num_actions, double gamma) {
  TabularGame game;
  game.num_states = num_states;
  game.num_actions.assign(num_agents, num_actions);
  game.gamma = gamma;
  const int joints = game.num_joint_actions();
  game.transitions.resize(num_states);
  game.rewards.resize(num_states);
  for (int s = 0; s < num_states; ++s) {
    for (int j = 0; j < joints; ++j) {
      game.transitions[s].push_back(Dirichlet(rng, num_states));
      std::vector<double> r(num_agents);
      for (double& x : r) x = rng.Uniform(-1.0, 1.0);
      game.rewards[s].push_back(std::move(r));
    }
  }
  game.Validate();
  return game;
}

TabularPolicies RandomPolicies(const TabularGame& game, Rng& rng) {
  TabularPolicies policies(game.num_agents());
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int s = 0; s < game.num_states; ++s) {
      policies[i].push_back(Dirichlet(rng, game.num_actions[i]));
    }
  }
  return policies;
}

TabularGame AllocatorGame(double gamma) {
  enum { kStart = 0, kAfterFirst = 1, kAfterSecond = 2, kEnd = 3 };
  TabularGame game;
  game.num_states = 4;
  game.num_actions = {2, 1};
  game.gamma = gamma;
  game.transitions.assign(4, std::vector<std::vector<double>>(
                                 2, std::vector<double>(4, 0.0)));
  game.rewards.assign(4, std::vector<std::vector<double>>(
                             2, std::vector<double>(2, 0.0)));
  for (int recipient = 0; recipient < 2; ++recipient) {
    game.transitions[kStart][recipient][kAfterFirst + recipient] = 1.0;
    game.rewards[kStart][recipient][recipient] = 1.0;
    for (int last = 0; last < 2; ++last) {
      const int s = kAfterFirst + last;
      game.transitions[s][recipient][kEnd] = 1.0;
      game.rewards[s][recipient][recipient] = last == recipient ? 2.0 : 1.0;
    }
    game.transitions[kEnd][recipient][kEnd] = 1.0;
  }
  game.Validate();
  return game;
}

TabularPolicies AllocatorPolicies(int first, int second) {
  if ((first != 0 && first != 1) || (second != 0 && second != 1)) {
    throw DomainError("AllocatorPolicies: recipients must be 0 or 1");
  }
  auto pick = [](int a) {
    return a == 0 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0};
  };
  TabularPolicies policies(2);
  policies[0] = {pick(first), pick(second), pick(second), pick(0)};
  policies[1].assign(4, std::vector<double>{1.0});
  return policies;
}

}  // namespace barocco
