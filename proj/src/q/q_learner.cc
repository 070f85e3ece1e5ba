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

#include "barocco/q/q_learner.h"

#include <algorithm>
#include <cmath>

#include "barocco/common/errors.h"

namespace barocco {
namespace {

// RNG stream ids; each purpose draws from its own stream so that disabling
// a component leaves the others' draws untouched.
constexpr std::uint64_t kSelfishInitStream = 100;
constexpr std::uint64_t kSocialInitStream = 200;
constexpr std::uint64_t kMixerInitStream = 300;
constexpr std::uint64_t kActStream = 400;
constexpr std::uint64_t kSelfishSampleStream = 500;
constexpr std::uint64_t kSocialSampleStream = 600;

std::vector<int> Widths(int input, const std::vector<int>& hidden, int output) {
  std::vector<int> widths = {input};
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(output);
  return widths;
}

}  // namespace

void QConfig::Validate() const {
  if (num_agents < 1) throw ConfigError("q: num_agents must be >= 1");
  if (static_cast<int>(num_actions.size()) != num_agents) {
    throw ConfigError("q: one action count per agent required");
  }
  if (observation_size < 1 || state_size < 1) {
    throw ConfigError("q: observation and state sizes must be positive");
  }
  CheckLambda(lambda);
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("q: gamma must lie in [0, 1)");
  if (batch_size < 1 || n_step < 1 || target_period < 1 || train_every < 1) {
    throw ConfigError("q: batch_size, n_step, target_period, train_every must be >= 1");
  }
  if (!train_selfish && !train_social) {
    throw ConfigError("q: at least one component must be trained");
  }
  if (!train_selfish && lambda != 1.0) {
    throw ConfigError("q: without selfish learners lambda must be 1");
  }
  if (!train_social && !crs && lambda != 0.0) {
    throw ConfigError("q: without a social component lambda must be 0");
  }
  if (train_social && mode == SocialMode::kLong && !train_selfish) {
    throw ConfigError("q: long-term social targets need selfish learners");
  }
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0) ||
      !(epsilon_decay > 0.0 && epsilon_decay <= 1.0) ||
      !(epsilon_floor >= 0.0 && epsilon_floor <= epsilon_start)) {
    throw ConfigError("q: bad epsilon schedule");
  }
}

int CombinedArgmax(std::span<const double> selfish,
                   std::span<const double> social, double lambda) {
  if (selfish.size() != social.size() || selfish.empty()) {
    throw ShapeError("CombinedArgmax: value vectors differ in length");
  }
  int best = 0;
  double best_value = Combine(selfish[0], social[0], lambda);
  for (std::size_t a = 1; a < selfish.size(); ++a) {
    const double v = Combine(selfish[a], social[a], lambda);
    if (v > best_value) {
      best = static_cast<int>(a);
      best_value = v;
    }
  }
  return best;
}

double SelfishTarget(double discounted_return, double bootstrap_discount,
                     std::span<const double> target_q,
                     std::span<const double> online_selfish,
                     std::span<const double> online_social, double lambda) {
  if (bootstrap_discount == 0.0) return discounted_return;
  const int a = CombinedArgmax(online_selfish, online_social, lambda);
  return discounted_return + bootstrap_discount * target_q[a];
}

double ShortSocialTarget(std::span<const double> rewards, SwChoice sw,
                         double gamma, double next_social_value, bool terminal) {
  const double welfare = SocialWelfare(sw, rewards);
  return terminal ? welfare : welfare + gamma * next_social_value;
}

double LongSocialTarget(std::span<const double> selfish_targets, SwChoice sw) {
  return SocialWelfare(sw, selfish_targets);
}

QLearner::QLearner(QConfig config)
    : config_((config.Validate(), std::move(config))),
      input_size_(config_.observation_size + (config_.fingerprint ? 1 : 0)),
      mixer_state_size_(config_.state_size + (config_.fingerprint ? 1 : 0)),
      buffer_(config_.buffer_capacity, config_.num_agents,
              config_.observation_size, config_.state_size,
              config_.num_agents + 1,
              config_.priority_exponent),
      act_rng_(config_.seed, kActStream),
      social_sample_rng_(config_.seed, kSocialSampleStream),
      epsilon_(config_.epsilon_start) {
  const int n = config_.num_agents;
  for (int i = 0; i < n; ++i) {
    DenseNetwork net(Widths(input_size_, config_.hidden, config_.num_actions[i]));
    Rng init(config_.seed, kSelfishInitStream + i);
    net.InitUniformFanIn(init);
    selfish_.push_back(net);
    selfish_target_.push_back(net);
    selfish_adam_.emplace_back(net.num_parameters(), config_.adam);
    selfish_sample_rng_.emplace_back(config_.seed, kSelfishSampleStream + i);
  }
  if (config_.train_social) {
    for (int i = 0; i < n; ++i) {
      DenseNetwork net(Widths(input_size_, config_.hidden, config_.num_actions[i]));
      Rng init(config_.seed, kSocialInitStream + i);
      net.InitUniformFanIn(init);
      social_.push_back(net);
      social_target_.push_back(net);
      social_adam_.emplace_back(net.num_parameters(), config_.adam);
    }
    mixer_ = MonotonicMixer(n, mixer_state_size_, config_.mixer_embed,
                            config_.hyper_hidden, config_.mixer_activation);
    Rng init(config_.seed, kMixerInitStream);
    mixer_.Init(init);
    mixer_target_ = mixer_;
    for (const DenseNetwork* net : mixer_.networks()) {
      mixer_adam_.emplace_back(net->num_parameters(), config_.adam);
    }
  }
}

std::vector<double> QLearner::Input(std::span<const double> features,
                                    double eps) const {
  std::vector<double> input(features.begin(), features.end());
  if (config_.fingerprint) input.push_back(eps);
  return input;
}

Matrix QLearner::Inputs(const std::vector<std::vector<double>>& rows) const {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<double> QLearner::SelfishValues(int agent,
                                            std::span<const double> obs) const {
  return selfish_.at(agent).Evaluate(Input(obs, epsilon_));
}

std::vector<double> QLearner::SocialValues(int agent,
                                           std::span<const double> obs) const {
  if (!config_.train_social) {
    throw UsageError("SocialValues: learner has no social component");
  }
  return social_.at(agent).Evaluate(Input(obs, epsilon_));
}

int QLearner::GreedyAction(int agent, std::span<const double> obs) const {
  const std::vector<double> selfish = SelfishValues(agent, obs);
  if (!config_.train_social) return CombinedArgmax(selfish, selfish, 0.0);
  return CombinedArgmax(selfish, SocialValues(agent, obs), config_.lambda);
}

std::vector<int> QLearner::Act(
    const std::vector<std::vector<double>>& observations, bool explore) {
  if (static_cast<int>(observations.size()) != config_.num_agents) {
    throw ShapeError("Act: one observation per agent required");
  }
  std::vector<int> actions(config_.num_agents);
  for (int i = 0; i < config_.num_agents; ++i) {
    if (explore && act_rng_.Uniform() < epsilon_) {
      actions[i] = act_rng_.UniformInt(config_.num_actions[i]);
    } else {
      actions[i] = GreedyAction(i, observations[i]);
    }
  }
  return actions;
}

QTrainStats QLearner::Observe(Experience experience) {
  experience.epsilon = epsilon_;
  buffer_.Add(experience);
  epsilon_ = std::max(config_.epsilon_floor, epsilon_ * config_.epsilon_decay);
  ++steps_;
  if (steps_ % config_.train_every != 0) return {};
  return TrainStep();
}

QTrainStats QLearner::TrainStep() {
  QTrainStats stats;
  const std::size_t needed = std::max<std::size_t>(
      config_.batch_size, static_cast<std::size_t>(config_.learning_starts));
  if (buffer_.num_sampleable() < needed) return stats;
  stats.trained = true;
  if (config_.train_selfish) {
    for (int i = 0; i < config_.num_agents; ++i) {
      stats.selfish_loss.push_back(TrainSelfish(i));
    }
  }
  if (config_.train_social) stats.social_loss = TrainSocial();
  ++updates_;
  if (updates_ % config_.target_period == 0) SyncTargets();
  return stats;
}

void QLearner::SyncTargets() {
  for (std::size_t i = 0; i < selfish_.size(); ++i) {
    selfish_target_[i].SetParameters(selfish_[i].parameters());
  }
  for (std::size_t i = 0; i < social_.size(); ++i) {
    social_target_[i].SetParameters(social_[i].parameters());
  }
  if (config_.train_social) {
    const auto online = mixer_.networks();
    const auto target = mixer_target_.networks();
    for (std::size_t k = 0; k < online.size(); ++k) {
      target[k]->SetParameters(online[k]->parameters());
    }
  }
}

double QLearner::TrainSelfish(int agent) {
  const int batch = config_.batch_size;
  const std::vector<std::uint64_t> ids =
      buffer_.Sample(agent, batch, selfish_sample_rng_[agent]);
  const std::vector<double> weights =
      buffer_.ImportanceWeights(agent, ids, config_.priority_beta);
  const double reward_lambda = config_.crs ? config_.lambda : 0.0;

  std::vector<std::vector<double>> inputs;
  std::vector<NStepReturn> chains;
  std::vector<std::vector<double>> next_inputs;
  std::vector<int> next_row(batch, -1);
  for (int b = 0; b < batch; ++b) {
    inputs.push_back(
        Input(buffer_.Observation(ids[b], agent), buffer_.Epsilon(ids[b])));
    chains.push_back(buffer_.NStep(ids[b], agent, config_.n_step, config_.gamma,
                                   reward_lambda, config_.sw));
    if (chains.back().bootstrap_discount != 0.0) {
      const std::uint64_t id = chains.back().bootstrap_id;
      next_row[b] = static_cast<int>(next_inputs.size());
      next_inputs.push_back(
          Input(buffer_.NextObservation(id, agent), buffer_.NextEpsilon(id)));
    }
  }

  ForwardCache cache;
  DenseNetwork& net = selfish_[agent];
  const Matrix q = net.Forward(Inputs(inputs), &cache);
  Matrix next_online, next_social, next_target;
  const bool use_social = config_.train_social && config_.lambda != 0.0;
  if (!next_inputs.empty()) {
    const Matrix x = Inputs(next_inputs);
    next_online = net.Forward(x);
    next_target = selfish_target_[agent].Forward(x);
    if (use_social) next_social = social_[agent].Forward(x);
  }

  Matrix grad(batch, config_.num_actions[agent]);
  std::vector<double> errors(batch);
  double loss = 0.0;
  for (int b = 0; b < batch; ++b) {
    double y = chains[b].discounted_return;
    if (next_row[b] >= 0) {
      const auto online = next_online.row(next_row[b]);
      y = SelfishTarget(y, chains[b].bootstrap_discount,
                        next_target.row(next_row[b]), online,
                        use_social ? next_social.row(next_row[b]) : online,
                        use_social ? config_.lambda : 0.0);
    }
    const int a = buffer_.Action(ids[b], agent);
    const LossAndGrad td = TdLoss(q(b, a), y);
    errors[b] = y - q(b, a);
    loss += weights[b] * td.loss / batch;
    grad(b, a) = weights[b] * td.grad / batch;
  }
  const NetworkGradients g = net.Backward(cache, grad);
  AdamStep(net.mutable_parameters(), g.parameters, selfish_adam_[agent]);
  buffer_.UpdatePriorities(agent, ids, errors);
  return loss;
}

double QLearner::TrainSocial() {
  const int n = config_.num_agents;
  const int batch = config_.batch_size;
  const std::vector<std::uint64_t> ids =
      buffer_.Sample(n, batch, social_sample_rng_);
  const std::vector<double> weights =
      buffer_.ImportanceWeights(n, ids, config_.priority_beta);

  std::vector<std::vector<double>> states, next_states;
  for (int b = 0; b < batch; ++b) {
    states.push_back(Input(buffer_.State(ids[b]), buffer_.Epsilon(ids[b])));
    next_states.push_back(
        Input(buffer_.NextState(ids[b]), buffer_.NextEpsilon(ids[b])));
  }

  // Contributions of the taken actions and combined-greedy next actions.
  Matrix contributions(batch, n);
  Matrix next_contributions(batch, n);
  std::vector<ForwardCache> caches(n);
  std::vector<Matrix> selfish_next_targets(n);
  std::vector<std::vector<int>> greedy(n, std::vector<int>(batch));
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<double>> inputs, next_inputs;
    for (int b = 0; b < batch; ++b) {
      inputs.push_back(Input(buffer_.Observation(ids[b], i), buffer_.Epsilon(ids[b])));
      next_inputs.push_back(
          Input(buffer_.NextObservation(ids[b], i), buffer_.NextEpsilon(ids[b])));
    }
    const Matrix q = social_[i].Forward(Inputs(inputs), &caches[i]);
    const Matrix x_next = Inputs(next_inputs);
    const Matrix social_next = social_[i].Forward(x_next);
    Matrix selfish_next = social_next;
    if (config_.lambda != 1.0 || config_.mode == SocialMode::kLong) {
      selfish_next = selfish_[i].Forward(x_next);
    }
    const Matrix social_next_target = social_target_[i].Forward(x_next);
    if (config_.mode == SocialMode::kLong) {
      selfish_next_targets[i] = selfish_target_[i].Forward(x_next);
    }
    for (int b = 0; b < batch; ++b) {
      contributions(b, i) = q(b, buffer_.Action(ids[b], i));
      greedy[i][b] = CombinedArgmax(selfish_next.row(b), social_next.row(b),
                                    config_.lambda);
      next_contributions(b, i) = social_next_target(b, greedy[i][b]);
    }
  }

  MonotonicMixer::Cache mix_cache;
  const std::vector<double> q_sw =
      mixer_.Forward(contributions, Inputs(states), &mix_cache);
  std::vector<double> next_sw;
  if (config_.mode == SocialMode::kShort) {
    next_sw = mixer_target_.Forward(next_contributions, Inputs(next_states));
  }

  std::vector<double> grad(batch), errors(batch), y_i(n);
  double loss = 0.0;
  for (int b = 0; b < batch; ++b) {
    const std::span<const double> rewards = buffer_.Rewards(ids[b]);
    double y;
    if (config_.mode == SocialMode::kShort) {
      y = ShortSocialTarget(rewards, config_.sw, config_.gamma, next_sw[b],
                            buffer_.AnyTerminated(ids[b]));
    } else {
      for (int i = 0; i < n; ++i) {
        y_i[i] = rewards[i];
        if (!buffer_.Terminated(ids[b], i)) {
          y_i[i] += config_.gamma * selfish_next_targets[i](b, greedy[i][b]);
        }
      }
      y = LongSocialTarget(y_i, config_.sw);
    }
    const LossAndGrad td = TdLoss(q_sw[b], y);
    errors[b] = y - q_sw[b];
    loss += weights[b] * td.loss / batch;
    grad[b] = weights[b] * td.grad / batch;
  }

  const MonotonicMixer::Gradients g = mixer_.Backward(mix_cache, grad);
  const auto hyper = mixer_.networks();
  for (std::size_t k = 0; k < hyper.size(); ++k) {
    AdamStep(hyper[k]->mutable_parameters(), g.hyper[k], mixer_adam_[k]);
  }
  for (int i = 0; i < n; ++i) {
    Matrix out_grad(batch, config_.num_actions[i]);
    for (int b = 0; b < batch; ++b) {
      out_grad(b, buffer_.Action(ids[b], i)) = g.contributions(b, i);
    }
    const NetworkGradients ng = social_[i].Backward(caches[i], out_grad);
    AdamStep(social_[i].mutable_parameters(), ng.parameters, social_adam_[i]);
  }
  buffer_.UpdatePriorities(n, ids, errors);
  return loss;
}

std::vector<std::pair<std::string, DenseNetwork*>> QLearner::NamedNetworks() {
  std::vector<std::pair<std::string, DenseNetwork*>> out;
  for (std::size_t i = 0; i < selfish_.size(); ++i) {
    out.emplace_back("selfish/" + std::to_string(i), &selfish_[i]);
    out.emplace_back("selfish_target/" + std::to_string(i), &selfish_target_[i]);
  }
  for (std::size_t i = 0; i < social_.size(); ++i) {
    out.emplace_back("social/" + std::to_string(i), &social_[i]);
    out.emplace_back("social_target/" + std::to_string(i), &social_target_[i]);
  }
  if (config_.train_social) {
    const auto online = mixer_.networks();
    const auto target = mixer_target_.networks();
    for (std::size_t k = 0; k < online.size(); ++k) {
      out.emplace_back("mixer/" + std::to_string(k), online[k]);
      out.emplace_back("mixer_target/" + std::to_string(k), target[k]);
    }
  }
  return out;
}

}  // namespace barocco
