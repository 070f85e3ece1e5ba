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

#include "barocco/ac/ac_learner.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "barocco/common/errors.h"

namespace barocco {
namespace {

constexpr std::uint64_t kPolicyInitStream = 700;
constexpr std::uint64_t kSelfishInitStream = 800;
constexpr std::uint64_t kSocialInitStream = 900;
constexpr std::uint64_t kActStream = 1000;
constexpr std::uint64_t kBootstrapStream = 1100;
constexpr std::uint64_t kShuffleStream = 1200;

constexpr double kVarianceFloor = 1e-8;

std::vector<int> Widths(int input, const std::vector<int>& hidden, int output) {
  std::vector<int> widths = {input};
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(output);
  return widths;
}

Matrix Rows(const Matrix& source, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), source.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::copy(source.row(rows[k]).begin(), source.row(rows[k]).end(),
              out.row(k).begin());
  }
  return out;
}

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

Moments MeanStd(std::span<const double> x) {
  Moments m;
  if (x.empty()) return m;
  for (double v : x) m.mean += v;
  m.mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - m.mean) * (v - m.mean);
  m.std = std::sqrt(var / static_cast<double>(x.size()));
  return m;
}

}  // namespace

void AcConfig::Validate() const {
  if (num_agents < 1) throw ConfigError("ac: num_agents must be >= 1");
  if (static_cast<int>(num_actions.size()) != num_agents) {
    throw ConfigError("ac: one action count per agent required");
  }
  if (observation_size < 1 || state_size < 1) {
    throw ConfigError("ac: observation and state sizes must be positive");
  }
  CheckLambda(lambda);
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("ac: gamma must lie in [0, 1)");
  if (batch_size < 1 || minibatch_size < 1 || epochs < 1) {
    throw ConfigError("ac: batch_size, minibatch_size, epochs must be >= 1");
  }
  if (!(clip > 0.0)) throw ConfigError("ac: clip must be positive");
  if (entropy_coef < 0.0 || !(entropy_decay > 0.0 && entropy_decay <= 1.0)) {
    throw ConfigError("ac: bad entropy schedule");
  }
  if (!train_selfish && !train_social) {
    throw ConfigError("ac: at least one critic must be trained");
  }
  if (!train_selfish && lambda != 1.0) {
    throw ConfigError("ac: without selfish critics lambda must be 1");
  }
  if (!train_social && !crs && lambda != 0.0) {
    throw ConfigError("ac: without social critics lambda must be 0");
  }
  if (train_social && mode == SocialMode::kLong && !train_selfish) {
    throw ConfigError("ac: long-term social targets need selfish critics");
  }
}

double SelfishAdvantage(double reward, double gamma, double next_value,
                        double value, bool terminal) {
  const double target = terminal ? reward : reward + gamma * next_value;
  return target - value;
}

double ComaAdvantage(std::span<const double> q, std::span<const double> pi,
                     int action) {
  if (q.size() != pi.size()) {
    throw ShapeError("ComaAdvantage: policy and critic action counts differ");
  }
  if (action < 0 || action >= static_cast<int>(q.size())) {
    throw DomainError("ComaAdvantage: action out of range");
  }
  double baseline = 0.0;
  for (std::size_t a = 0; a < q.size(); ++a) baseline += pi[a] * q[a];
  return q[action] - baseline;
}

void NormalizeAdvantages(std::span<double> advantages) {
  if (advantages.empty()) return;
  const Moments m = MeanStd(advantages);
  const double scale =
      1.0 / std::sqrt(std::max(m.std * m.std, kVarianceFloor));
  for (double& a : advantages) a = (a - m.mean) * scale;
}

AcLearner::AcLearner(AcConfig config)
    : config_((config.Validate(), std::move(config))),
      act_rng_(config_.seed, kActStream),
      bootstrap_rng_(config_.seed, kBootstrapStream),
      shuffle_rng_(config_.seed, kShuffleStream),
      entropy_coef_(config_.entropy_coef) {
  const int n = config_.num_agents;
  const double relu_gain = std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    const int others =
        std::accumulate(config_.num_actions.begin(), config_.num_actions.end(), 0) -
        config_.num_actions[i];
    const int critic_in = config_.state_size + others;

    DenseNetwork policy(Widths(config_.observation_size, config_.policy_hidden,
                               config_.num_actions[i]),
                        OutputActivation::kSoftmax);
    Rng policy_init(config_.seed, kPolicyInitStream + i);
    policy.InitOrthogonal(policy_init, relu_gain, 0.01);
    policies_.push_back(policy);
    policy_adam_.emplace_back(policy.num_parameters(), config_.adam);

    DenseNetwork selfish(Widths(critic_in, config_.critic_hidden, 1));
    Rng selfish_init(config_.seed, kSelfishInitStream + i);
    selfish.InitOrthogonal(selfish_init, relu_gain, 1.0);
    selfish_critics_.push_back(selfish);
    selfish_adam_.emplace_back(selfish.num_parameters(), config_.adam);

    if (config_.train_social) {
      DenseNetwork social(
          Widths(critic_in, config_.critic_hidden, config_.num_actions[i]));
      Rng social_init(config_.seed, kSocialInitStream + i);
      social.InitOrthogonal(social_init, relu_gain, 1.0);
      social_critics_.push_back(social);
      social_adam_.emplace_back(social.num_parameters(), config_.adam);
    }
  }
}

std::vector<double> AcLearner::Policy(int agent,
                                      std::span<const double> obs) const {
  return policies_.at(agent).Evaluate(obs);
}

int AcLearner::ModeAction(int agent, std::span<const double> obs) const {
  const std::vector<double> p = Policy(agent, obs);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::vector<int> AcLearner::Act(
    const std::vector<std::vector<double>>& observations, bool explore) {
  if (static_cast<int>(observations.size()) != config_.num_agents) {
    throw ShapeError("Act: one observation per agent required");
  }
  std::vector<int> actions(config_.num_agents);
  for (int i = 0; i < config_.num_agents; ++i) {
    actions[i] = explore ? act_rng_.Categorical(Policy(i, observations[i]))
                         : ModeAction(i, observations[i]);
  }
  return actions;
}

std::vector<double> AcLearner::CriticInput(int agent,
                                           std::span<const double> state,
                                           std::span<const int> actions) const {
  if (static_cast<int>(state.size()) != config_.state_size ||
      static_cast<int>(actions.size()) != config_.num_agents) {
    throw ShapeError("CriticInput: state or joint action has wrong size");
  }
  std::vector<double> input(state.begin(), state.end());
  for (int j = 0; j < config_.num_agents; ++j) {
    if (j == agent) continue;
    const std::size_t base = input.size();
    input.resize(base + config_.num_actions[j], 0.0);
    input[base + actions[j]] = 1.0;
  }
  return input;
}

double AcLearner::SelfishValue(int agent, std::span<const double> state,
                               std::span<const int> actions) const {
  return selfish_critics_.at(agent).Evaluate(CriticInput(agent, state, actions))[0];
}

std::vector<double> AcLearner::SocialValues(int agent,
                                            std::span<const double> state,
                                            std::span<const int> actions) const {
  if (!config_.train_social) {
    throw UsageError("SocialValues: learner has no social critics");
  }
  return social_critics_.at(agent).Evaluate(CriticInput(agent, state, actions));
}

std::optional<AcDiagnostics> AcLearner::Observe(AcTransition transition) {
  pending_.push_back(std::move(transition));
  if (static_cast<int>(pending_.size()) < config_.batch_size) return std::nullopt;
  const AcDiagnostics d = Update(pending_);
  pending_.clear();
  return d;
}

AcDiagnostics AcLearner::Update(const std::vector<AcTransition>& batch) {
  if (batch.empty()) throw UsageError("AcLearner::Update: empty batch");
  const int n = config_.num_agents;
  const std::size_t steps = batch.size();

  // Next joint actions: the stored successor inside an episode, otherwise a
  // fresh sample from the current policies.
  std::vector<std::vector<int>> next_actions(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    if (t + 1 < steps && !batch[t].episode_end) {
      next_actions[t] = batch[t + 1].actions;
    } else {
      next_actions[t].resize(n);
      for (int i = 0; i < n; ++i) {
        next_actions[t][i] =
            bootstrap_rng_.Categorical(Policy(i, batch[t].next_observations[i]));
      }
    }
  }

  std::vector<Matrix> critic_x(n), obs_x(n), pi_old(n);
  std::vector<std::vector<double>> y(n), y_social(n), advantage(n);
  std::vector<std::vector<double>> a_selfish(n), a_social(n), next_q_taken(n);
  for (int i = 0; i < n; ++i) {
    const int width = static_cast<int>(
        CriticInput(i, batch[0].state, batch[0].actions).size());
    critic_x[i] = Matrix(steps, width);
    Matrix critic_next(steps, width);
    obs_x[i] = Matrix(steps, config_.observation_size);
    for (std::size_t t = 0; t < steps; ++t) {
      const auto x = CriticInput(i, batch[t].state, batch[t].actions);
      std::copy(x.begin(), x.end(), critic_x[i].row(t).begin());
      const auto xn = CriticInput(i, batch[t].next_state, next_actions[t]);
      std::copy(xn.begin(), xn.end(), critic_next.row(t).begin());
      std::copy(batch[t].observations[i].begin(), batch[t].observations[i].end(),
                obs_x[i].row(t).begin());
    }
    pi_old[i] = policies_[i].Forward(obs_x[i]);
    y[i].assign(steps, 0.0);
    a_selfish[i].assign(steps, 0.0);
    if (config_.train_selfish) {
      const Matrix v = selfish_critics_[i].Forward(critic_x[i]);
      const Matrix v_next = selfish_critics_[i].Forward(critic_next);
      for (std::size_t t = 0; t < steps; ++t) {
        const double r = config_.crs ? CrsReward(i, batch[t].rewards,
                                                 config_.lambda, config_.sw)
                                     : batch[t].rewards[i];
        const bool terminal = batch[t].terminated[i];
        a_selfish[i][t] =
            SelfishAdvantage(r, config_.gamma, v_next(t, 0), v(t, 0), terminal);
        y[i][t] = a_selfish[i][t] + v(t, 0);
      }
    }
    a_social[i].assign(steps, 0.0);
    next_q_taken[i].assign(steps, 0.0);
    if (config_.train_social) {
      const Matrix q = social_critics_[i].Forward(critic_x[i]);
      const Matrix q_next = social_critics_[i].Forward(critic_next);
      for (std::size_t t = 0; t < steps; ++t) {
        a_social[i][t] = ComaAdvantage(q.row(t), pi_old[i].row(t),
                                       batch[t].actions[i]);
        next_q_taken[i][t] = q_next(t, next_actions[t][i]);
      }
    }
  }

  AcDiagnostics diag;
  std::vector<double> all_selfish, all_social;
  std::vector<double> targets(n);
  for (int i = 0; i < n; ++i) {
    advantage[i].resize(steps);
    y_social[i].resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
      if (config_.train_social) {
        if (config_.mode == SocialMode::kShort) {
          y_social[i][t] =
              ShortSocialTarget(batch[t].rewards, config_.sw, config_.gamma,
                                next_q_taken[i][t], batch[t].terminated[i]);
        } else {
          for (int j = 0; j < n; ++j) targets[j] = y[j][t];
          y_social[i][t] = LongSocialTarget(targets, config_.sw);
        }
      }
      advantage[i][t] = Combine(a_selfish[i][t], a_social[i][t], config_.lambda);
    }
    NormalizeAdvantages(advantage[i]);
    all_selfish.insert(all_selfish.end(), a_selfish[i].begin(), a_selfish[i].end());
    all_social.insert(all_social.end(), a_social[i].begin(), a_social[i].end());
  }
  const Moments ms = MeanStd(all_selfish);
  const Moments mw = MeanStd(all_social);
  diag.selfish_advantage_mean = ms.mean;
  diag.selfish_advantage_std = ms.std;
  diag.social_advantage_mean = mw.mean;
  diag.social_advantage_std = mw.std;

  std::vector<std::size_t> order(steps);
  std::iota(order.begin(), order.end(), 0);
  double ratio_sum = 0.0, entropy_sum = 0.0;
  double selfish_loss = 0.0, social_loss = 0.0;
  std::int64_t ratio_count = 0, clipped = 0, critic_batches = 0;
  for (int epoch = 0; epoch < config_.epochs; ++epoch) {
    for (std::size_t k = steps - 1; k > 0; --k) {
      std::swap(order[k], order[shuffle_rng_.UniformInt(k + 1)]);
    }
    for (std::size_t start = 0; start < steps; start += config_.minibatch_size) {
      const std::size_t end =
          std::min(steps, start + static_cast<std::size_t>(config_.minibatch_size));
      const std::span<const std::size_t> rows(order.data() + start, end - start);
      const double m = static_cast<double>(rows.size());
      for (int i = 0; i < n; ++i) {
        // Policy: PPO surrogate plus entropy bonus.
        ForwardCache cache;
        const Matrix p = policies_[i].Forward(Rows(obs_x[i], rows), &cache);
        Matrix grad(rows.size(), config_.num_actions[i]);
        for (std::size_t k = 0; k < rows.size(); ++k) {
          const std::size_t t = rows[k];
          const int a = batch[t].actions[i];
          const double old = pi_old[i](t, a);
          const double ratio = p(k, a) / old;
          const LossAndGrad ppo = PpoLoss(ratio, advantage[i][t], config_.clip);
          grad(k, a) += ppo.grad / old / m;
          double entropy = 0.0;
          for (int b = 0; b < config_.num_actions[i]; ++b) {
            const double lp = std::log(std::max(p(k, b), 1e-300));
            entropy -= p(k, b) * lp;
            grad(k, b) += entropy_coef_ * (lp + 1.0) / m;
          }
          ratio_sum += ratio;
          entropy_sum += entropy;
          ++ratio_count;
          if (std::abs(ratio - 1.0) > config_.clip) ++clipped;
          if (epoch == 0 && start == 0) {
            diag.first_epoch_max_ratio_gap =
                std::max(diag.first_epoch_max_ratio_gap, std::abs(ratio - 1.0));
          }
        }
        const NetworkGradients pg = policies_[i].Backward(cache, grad);
        AdamStep(policies_[i].mutable_parameters(), pg.parameters, policy_adam_[i]);

        if (config_.train_selfish) {
          ForwardCache vc;
          const Matrix v = selfish_critics_[i].Forward(Rows(critic_x[i], rows), &vc);
          Matrix vg(rows.size(), 1);
          for (std::size_t k = 0; k < rows.size(); ++k) {
            const LossAndGrad td = TdLoss(v(k, 0), y[i][rows[k]]);
            vg(k, 0) = td.grad / m;
            selfish_loss += td.loss / m;
          }
          const NetworkGradients g = selfish_critics_[i].Backward(vc, vg);
          AdamStep(selfish_critics_[i].mutable_parameters(), g.parameters,
                   selfish_adam_[i]);
        }
        if (config_.train_social) {
          ForwardCache qc;
          const Matrix q = social_critics_[i].Forward(Rows(critic_x[i], rows), &qc);
          Matrix qg(rows.size(), config_.num_actions[i]);
          for (std::size_t k = 0; k < rows.size(); ++k) {
            const int a = batch[rows[k]].actions[i];
            const LossAndGrad td = TdLoss(q(k, a), y_social[i][rows[k]]);
            qg(k, a) = td.grad / m;
            social_loss += td.loss / m;
          }
          const NetworkGradients g = social_critics_[i].Backward(qc, qg);
          AdamStep(social_critics_[i].mutable_parameters(), g.parameters,
                   social_adam_[i]);
        }
      }
      ++critic_batches;
      entropy_coef_ *= config_.entropy_decay;
    }
  }
  diag.mean_ratio = ratio_sum / static_cast<double>(ratio_count);
  diag.clip_fraction =
      static_cast<double>(clipped) / static_cast<double>(ratio_count);
  diag.entropy = entropy_sum / static_cast<double>(ratio_count);
  diag.entropy_coef = entropy_coef_;
  diag.selfish_critic_loss = selfish_loss / static_cast<double>(critic_batches * n);
  diag.social_critic_loss = social_loss / static_cast<double>(critic_batches * n);
  return diag;
}

NamedNetworks AcLearner::Networks() {
  NamedNetworks out;
  for (std::size_t i = 0; i < policies_.size(); ++i) {
    out.emplace_back("policy/" + std::to_string(i), &policies_[i]);
    out.emplace_back("selfish_critic/" + std::to_string(i), &selfish_critics_[i]);
  }
  for (std::size_t i = 0; i < social_critics_.size(); ++i) {
    out.emplace_back("social_critic/" + std::to_string(i), &social_critics_[i]);
  }
  return out;
}

}  // namespace barocco
