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

#ifndef BAROCCO_AC_AC_LEARNER_H_
#define BAROCCO_AC_AC_LEARNER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "barocco/common/random.h"
#include "barocco/numerics/dense_network.h"
#include "barocco/numerics/optim.h"
#include "barocco/q/checkpoint.h"
#include "barocco/q/q_learner.h"
#include "barocco/welfare/welfare.h"

namespace barocco {

struct AcConfig {
  int num_agents = 2;
  std::vector<int> num_actions;
  int observation_size = 0;
  int state_size = 0;
  std::vector<int> policy_hidden = {128, 128};
  std::vector<int> critic_hidden = {128, 128};

  double lambda = 1.0;
  SwChoice sw = SwChoice::kSum;
  SocialMode mode = SocialMode::kLong;
  bool train_selfish = true;  // false for vanilla COMA
  bool train_social = true;   // false for selfish and CRS learners
  bool crs = false;

  double gamma = 0.99;
  AdamOptions adam{.learning_rate = 5e-4, .decay = 0.999998};
  int batch_size = 2000;
  int minibatch_size = 500;
  int epochs = 10;
  double clip = 0.2;
  double entropy_coef = 0.05;
  double entropy_decay = 0.99998;  // per policy update
  std::uint64_t seed = 0;

  void Validate() const;
};

struct AcTransition {
  std::vector<double> state;
  std::vector<std::vector<double>> observations;
  std::vector<int> actions;
  std::vector<double> rewards;
  std::vector<bool> terminated;
  bool episode_end = false;
  std::vector<double> next_state;
  std::vector<std::vector<double>> next_observations;
};

// y - V(s) with y = r + gamma V(s'), no bootstrap at termination.
double SelfishAdvantage(double reward, double gamma, double next_value,
                        double value, bool terminal);
// Q[a] - sum_a' pi(a') Q[a'].
double ComaAdvantage(std::span<const double> q, std::span<const double> pi,
                     int action);
// Zero mean, unit variance; the variance is floored at 1e-8.
void NormalizeAdvantages(std::span<double> advantages);

struct AcDiagnostics {
  double mean_ratio = 0.0;
  double first_epoch_max_ratio_gap = 0.0;  // max |ratio - 1| before any step
  double clip_fraction = 0.0;
  double entropy = 0.0;
  double entropy_coef = 0.0;
  double selfish_advantage_mean = 0.0;
  double selfish_advantage_std = 0.0;
  double social_advantage_mean = 0.0;
  double social_advantage_std = 0.0;
  double selfish_critic_loss = 0.0;
  double social_critic_loss = 0.0;
};

class AcLearner {
 public:
  explicit AcLearner(AcConfig config);

  const AcConfig& config() const { return config_; }
  double entropy_coef() const { return entropy_coef_; }

  std::vector<double> Policy(int agent, std::span<const double> obs) const;
  int ModeAction(int agent, std::span<const double> obs) const;
  std::vector<int> Act(const std::vector<std::vector<double>>& observations,
                       bool explore);

  // Critic input: state followed by one-hot actions of the other agents.
  std::vector<double> CriticInput(int agent, std::span<const double> state,
                                  std::span<const int> actions) const;
  double SelfishValue(int agent, std::span<const double> state,
                      std::span<const int> actions) const;
  std::vector<double> SocialValues(int agent, std::span<const double> state,
                                   std::span<const int> actions) const;

  // Buffers the step; runs an update once batch_size steps are stored.
  std::optional<AcDiagnostics> Observe(AcTransition transition);
  AcDiagnostics Update(const std::vector<AcTransition>& batch);

  DenseNetwork& policy_network(int agent) { return policies_[agent]; }
  DenseNetwork& selfish_critic(int agent) { return selfish_critics_[agent]; }
  DenseNetwork& social_critic(int agent) { return social_critics_[agent]; }
  NamedNetworks Networks();

 private:
  AcConfig config_;
  std::vector<DenseNetwork> policies_;
  std::vector<DenseNetwork> selfish_critics_;
  std::vector<DenseNetwork> social_critics_;
  std::vector<AdamState> policy_adam_;
  std::vector<AdamState> selfish_adam_;
  std::vector<AdamState> social_adam_;
  Rng act_rng_;
  Rng bootstrap_rng_;
  Rng shuffle_rng_;
  double entropy_coef_;
  std::vector<AcTransition> pending_;
};

}  // namespace barocco

#endif  // BAROCCO_AC_AC_LEARNER_H_
