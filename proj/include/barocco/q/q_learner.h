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

#ifndef BAROCCO_Q_Q_LEARNER_H_
#define BAROCCO_Q_Q_LEARNER_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "barocco/common/random.h"
#include "barocco/numerics/dense_network.h"
#include "barocco/numerics/optim.h"
#include "barocco/q/mixer.h"
#include "barocco/q/replay_buffer.h"
#include "barocco/welfare/welfare.h"

namespace barocco {

// Social target: kShort bootstraps the joint social value, kLong applies SW
// to the agents' selfish targets.
enum class SocialMode { kShort, kLong };

struct QConfig {
  int num_agents = 2;
  std::vector<int> num_actions;
  int observation_size = 0;
  int state_size = 0;
  std::vector<int> hidden = {64, 64, 64};
  int mixer_embed = 32;
  int hyper_hidden = 64;
  MixerActivation mixer_activation = MixerActivation::kElu;

  double lambda = 1.0;
  SwChoice sw = SwChoice::kSum;
  SocialMode mode = SocialMode::kLong;
  bool train_selfish = true;  // false for vanilla QMIX
  bool train_social = true;   // false for selfish and CRS learners
  bool crs = false;           // selfish targets use CRS-mixed rewards

  double gamma = 0.99;
  AdamOptions adam{.learning_rate = 5e-4, .decay = 0.999995};
  int batch_size = 64;
  int n_step = 5;
  std::size_t buffer_capacity = 500000;
  int target_period = 2000;  // in updates
  int train_every = 1;       // environment steps per update
  int learning_starts = 0;   // sampleable records required before updates
  double epsilon_start = 1.0;
  double epsilon_decay = 0.99999;
  double epsilon_floor = 0.0;
  bool fingerprint = true;
  double priority_exponent = 0.0;  // 0 keeps sampling uniform
  double priority_beta = 0.4;
  std::uint64_t seed = 0;

  void Validate() const;
};

// argmax_a Combine(selfish[a], social[a], lambda); lowest index on ties.
int CombinedArgmax(std::span<const double> selfish,
                   std::span<const double> social, double lambda);

// R + discount * target_q[a*], a* = CombinedArgmax(online_selfish,
// online_social, lambda). discount 0 marks a terminal chain.
double SelfishTarget(double discounted_return, double bootstrap_discount,
                     std::span<const double> target_q,
                     std::span<const double> online_selfish,
                     std::span<const double> online_social, double lambda);

double ShortSocialTarget(std::span<const double> rewards, SwChoice sw,
                         double gamma, double next_social_value, bool terminal);
double LongSocialTarget(std::span<const double> selfish_targets, SwChoice sw);

struct QTrainStats {
  bool trained = false;
  std::vector<double> selfish_loss;
  double social_loss = 0.0;
};

class QLearner {
 public:
  explicit QLearner(QConfig config);

  const QConfig& config() const { return config_; }
  double epsilon() const { return epsilon_; }
  std::int64_t num_updates() const { return updates_; }
  std::int64_t num_steps() const { return steps_; }
  const ReplayBuffer& buffer() const { return buffer_; }

  // Values at the current fingerprint.
  std::vector<double> SelfishValues(int agent, std::span<const double> obs) const;
  std::vector<double> SocialValues(int agent, std::span<const double> obs) const;
  int GreedyAction(int agent, std::span<const double> obs) const;
  std::vector<int> Act(const std::vector<std::vector<double>>& observations,
                       bool explore);

  // Stores the step (stamped with the current epsilon), decays epsilon and
  // trains every train_every steps.
  QTrainStats Observe(Experience experience);
  QTrainStats TrainStep();
  void SyncTargets();

  DenseNetwork& selfish_network(int agent) { return selfish_[agent]; }
  DenseNetwork& social_network(int agent) { return social_[agent]; }
  MonotonicMixer& mixer() { return mixer_; }

  std::vector<std::pair<std::string, DenseNetwork*>> NamedNetworks();

 private:
  std::vector<double> Input(std::span<const double> features, double eps) const;
  Matrix Inputs(const std::vector<std::vector<double>>& rows) const;
  double TrainSelfish(int agent);
  double TrainSocial();

  QConfig config_;
  int input_size_;
  int mixer_state_size_;
  ReplayBuffer buffer_;
  std::vector<DenseNetwork> selfish_;
  std::vector<DenseNetwork> selfish_target_;
  std::vector<AdamState> selfish_adam_;
  std::vector<DenseNetwork> social_;
  std::vector<DenseNetwork> social_target_;
  std::vector<AdamState> social_adam_;
  MonotonicMixer mixer_;
  MonotonicMixer mixer_target_;
  std::vector<AdamState> mixer_adam_;

  Rng act_rng_;
  std::vector<Rng> selfish_sample_rng_;
  Rng social_sample_rng_;

  double epsilon_;
  std::int64_t steps_ = 0;
  std::int64_t updates_ = 0;
};

}  // namespace barocco

#endif  // BAROCCO_Q_Q_LEARNER_H_
