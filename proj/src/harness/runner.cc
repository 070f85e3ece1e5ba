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

#include "barocco/harness/runner.h"

#include <fstream>
#include <functional>
#include <memory>

#include "barocco/common/errors.h"
#include "barocco/common/random.h"
#include "barocco/envs/eldorado.h"
#include "barocco/envs/harvest.h"
#include "barocco/envs/matrix_game.h"
#include "barocco/envs/toy_games.h"
#include "barocco/envs/trajectory.h"
#include "barocco/q/checkpoint.h"
#include "barocco/tabular/q_table.h"

namespace barocco {
namespace {

constexpr std::uint64_t kEvalSeedStream = 0xE7A1;
constexpr std::uint64_t kEvalActionStream = 0xE7A2;

EldoradoConfig EldoradoLiteConfig() {
  EldoradoConfig c;
  c.width = 6;
  c.height = 6;
  c.max_lifetime = 200;
  c.horizon = 200;
  return c;
}

std::vector<std::vector<double>> ObserveAll(const Environment& env) {
  std::vector<std::vector<double>> obs;
  for (int i = 0; i < env.num_agents(); ++i) obs.push_back(env.Observe(i));
  return obs;
}

void WriteHeader(const RunOptions& options, const std::string& hash, int agents) {
  if (options.log != nullptr) *options.log << MetricHeader(hash, agents) << '\n';
}

void Emit(const RunOptions& options, RunOutput& out, MetricRow row) {
  if (options.log != nullptr) *options.log << row.ToCsv() << '\n' << std::flush;
  out.rows.push_back(std::move(row));
}

void SaveNetworks(const std::string& path, const std::string& hash,
                  const NamedNetworks& networks) {
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write checkpoint '" + path + "'");
  SaveCheckpoint(file, hash, networks);
}

void LoadNetworks(const std::string& path, const std::string& hash,
                  const NamedNetworks& networks) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot read checkpoint '" + path + "'");
  LoadCheckpoint(file, hash, networks);
}

using EvalPolicy =
    std::function<std::vector<int>(const std::vector<std::vector<double>>&)>;
using EvalPolicyFactory = std::function<EvalPolicy()>;

template <typename Learner, typename MakeExperience>
void TrainLoop(const ExperimentConfig& config, const RunOptions& options,
               Environment& env, Learner& learner, RunOutput& out,
               const EvalPolicyFactory& eval_policy, MakeExperience&& observe) {
  std::unique_ptr<TrajectoryWriter> trajectory;
  if (options.trajectory != nullptr) {
    trajectory = std::make_unique<TrajectoryWriter>(*options.trajectory);
  }
  std::uint64_t episode = 0;
  env.Reset(MixSeed(config.seed, episode));
  std::vector<std::vector<double>> obs = ObserveAll(env);
  std::vector<double> state = env.GlobalState();
  for (std::int64_t step = 1; step <= config.total_steps; ++step) {
    const std::vector<int> actions = learner.Act(obs, /*explore=*/true);
    if (options.on_action) options.on_action(step, actions);
    StepResult result = env.Step(actions);
    if (trajectory) trajectory->Record(step, actions, result);
    observe(step, std::move(state), std::move(obs), actions, result);
    if (result.done) {
      ++episode;
      env.Reset(MixSeed(config.seed, episode));
      obs = ObserveAll(env);
      state = env.GlobalState();
    } else {
      obs = std::move(result.observations);
      state = std::move(result.state);
    }
    if (step % config.eval_interval == 0 || step == config.total_steps) {
      Emit(options, out, Evaluate(config, env, step, eval_policy()));
    }
  }
}

RunOutput RunQ(const ExperimentConfig& config, const RunOptions& options,
               const std::string& hash) {
  RunOutput out{hash, {}};
  const auto env = MakeEnvironment(config);
  QLearner learner(MakeQConfig(config, *env));
  if (!options.checkpoint_in.empty()) {
    LoadNetworks(options.checkpoint_in, hash, learner.NamedNetworks());
  }
  WriteHeader(options, hash, env->num_agents());
  // Greedy in the learned Q-values.
  const EvalPolicyFactory greedy = [&learner]() -> EvalPolicy {
    return [&learner](const auto& o) { return learner.Act(o, /*explore=*/false); };
  };
  if (options.eval_only) {
    Emit(options, out, Evaluate(config, *env, 0, greedy()));
    return out;
  }
  TrainLoop(config, options, *env, learner, out, greedy,
            [&](std::int64_t step, std::vector<double> state,
                std::vector<std::vector<double>> obs,
                const std::vector<int>& actions, const StepResult& result) {
              Experience e;
              e.state = std::move(state);
              e.observations = std::move(obs);
              e.actions = actions;
              e.rewards = result.rewards;
              e.terminated = result.terminated;
              e.episode_end = result.done;
              if (result.done) {
                e.next_state = result.state;
                e.next_observations = result.observations;
              }
              const QTrainStats stats = learner.Observe(std::move(e));
              if (options.diagnostics != nullptr && stats.trained &&
                  learner.num_updates() % 1000 == 0) {
                *options.diagnostics << "step=" << step
                                     << " epsilon=" << learner.epsilon();
                for (std::size_t i = 0; i < stats.selfish_loss.size(); ++i) {
                  *options.diagnostics << " selfish_loss_" << i << '='
                                       << stats.selfish_loss[i];
                }
                *options.diagnostics << " social_loss=" << stats.social_loss << '\n';
              }
            });
  if (!options.checkpoint_out.empty()) {
    SaveNetworks(options.checkpoint_out, hash, learner.NamedNetworks());
  }
  return out;
}

RunOutput RunAc(const ExperimentConfig& config, const RunOptions& options,
                const std::string& hash) {
  RunOutput out{hash, {}};
  const auto env = MakeEnvironment(config);
  AcLearner learner(MakeAcConfig(config, *env));
  if (!options.checkpoint_in.empty()) {
    LoadNetworks(options.checkpoint_in, hash, learner.Networks());
  }
  WriteHeader(options, hash, env->num_agents());
  // Samples the stochastic policy; every evaluation replays the same stream.
  const EvalPolicyFactory sampled = [&learner, &config]() -> EvalPolicy {
    auto rng = std::make_shared<Rng>(config.seed, kEvalActionStream);
    return [&learner, rng](const std::vector<std::vector<double>>& o) {
      std::vector<int> actions(o.size());
      for (std::size_t i = 0; i < o.size(); ++i) {
        actions[i] = rng->Categorical(learner.Policy(static_cast<int>(i), o[i]));
      }
      return actions;
    };
  };
  if (options.eval_only) {
    Emit(options, out, Evaluate(config, *env, 0, sampled()));
    return out;
  }
  TrainLoop(config, options, *env, learner, out, sampled,
            [&](std::int64_t step, std::vector<double> state,
                std::vector<std::vector<double>> obs,
                const std::vector<int>& actions, const StepResult& result) {
              AcTransition t;
              t.state = std::move(state);
              t.observations = std::move(obs);
              t.actions = actions;
              t.rewards = result.rewards;
              t.terminated = result.terminated;
              t.episode_end = result.done;
              t.next_state = result.state;
              t.next_observations = result.observations;
              const auto diag = learner.Observe(std::move(t));
              if (options.diagnostics != nullptr && diag) {
                *options.diagnostics
                    << "step=" << step << " mean_ratio=" << diag->mean_ratio
                    << " clip_fraction=" << diag->clip_fraction
                    << " entropy=" << diag->entropy
                    << " entropy_coef=" << diag->entropy_coef
                    << " selfish_adv_mean=" << diag->selfish_advantage_mean
                    << " selfish_adv_std=" << diag->selfish_advantage_std
                    << " social_adv_mean=" << diag->social_advantage_mean
                    << " social_adv_std=" << diag->social_advantage_std
                    << " selfish_critic_loss=" << diag->selfish_critic_loss
                    << " social_critic_loss=" << diag->social_critic_loss << '\n';
              }
            });
  if (!options.checkpoint_out.empty()) {
    SaveNetworks(options.checkpoint_out, hash, learner.Networks());
  }
  return out;
}

RunOutput RunTabular(const ExperimentConfig& config, const RunOptions& options,
                     const std::string& hash) {
  RunOutput out{hash, {}};
  MpdOptions mpd;
  mpd.iterations = config.total_steps;
  mpd.learning_rate = config.tabular_learning_rate;
  mpd.sw = config.sw;
  const MpdOutcome outcome = TrainMpd(config.lambda, config.seed, mpd);
  const MatrixGameSpec spec = ModifiedPrisonersDilemma();
  const auto& payoff = spec.payoffs[outcome.row_action][outcome.column_action];
  WriteHeader(options, hash, 2);
  std::vector<double> payoffs = {payoff[0], payoff[1]};
  Emit(options, out,
       MakeMetricRow(config.total_steps, payoffs, payoffs, {1.0, 1.0}));
  return out;
}

RunOutput RunExhaustive(const ExperimentConfig& config, const RunOptions& options,
                        const std::string& hash) {
  RunOutput out{hash, {}};
  WriteHeader(options, hash, 2);
  for (const AllocatorOutcome& o : EnumerateAllocatorOutcomes(config.gamma)) {
    std::vector<double> values(o.values.begin(), o.values.end());
    Emit(options, out, MakeMetricRow(o.option, values, values, {2.0, 2.0}));
  }
  return out;
}

}  // namespace

std::unique_ptr<Environment> MakeEnvironment(const ExperimentConfig& config) {
  if (config.env == "mpd") {
    return std::make_unique<MatrixGame>(ModifiedPrisonersDilemma());
  }
  if (config.env == "eldorado" || config.env == "eldorado_lite") {
    EldoradoConfig c = config.env == "eldorado" ? EldoradoConfig{} : EldoradoLiteConfig();
    if (config.horizon > 0) {
      c.horizon = config.horizon;
      c.max_lifetime = std::min(c.max_lifetime, config.horizon);
    }
    return std::make_unique<Eldorado>(c);
  }
  if (config.env == "harvest" || config.env == "harvest_lite") {
    HarvestConfig c = config.env == "harvest" ? HarvestFullConfig() : HarvestLiteConfig();
    if (config.horizon > 0) c.horizon = config.horizon;
    return std::make_unique<Harvest>(c);
  }
  throw ConfigError("env '" + config.env + "' is not a simulator environment");
}

QConfig MakeQConfig(const ExperimentConfig& config, const Environment& env) {
  QConfig q;
  q.num_agents = env.num_agents();
  for (int i = 0; i < q.num_agents; ++i) q.num_actions.push_back(env.num_actions(i));
  q.observation_size = env.observation_size();
  q.state_size = env.state_size();
  q.hidden = config.q_hidden;
  q.mixer_embed = config.mixer_embed;
  q.hyper_hidden = config.hyper_hidden;
  q.lambda = config.lambda;
  q.sw = config.sw;
  q.mode = config.algorithm == "vanilla" ? SocialMode::kShort : SocialMode::kLong;
  q.train_selfish = config.algorithm != "vanilla";
  q.train_social = config.algorithm == "barocco" || config.algorithm == "vanilla";
  q.crs = config.algorithm == "crs";
  q.gamma = config.gamma;
  q.adam.learning_rate = config.learning_rate;
  q.adam.decay = config.lr_decay;
  q.batch_size = config.batch_size;
  q.n_step = config.n_step;
  q.buffer_capacity = static_cast<std::size_t>(config.buffer_size);
  q.target_period = config.target_period;
  q.train_every = config.train_every;
  q.learning_starts = config.learning_starts;
  q.epsilon_start = config.epsilon_start;
  q.epsilon_decay = config.epsilon_decay;
  q.epsilon_floor = config.epsilon_floor;
  q.fingerprint = config.fingerprint;
  q.priority_exponent = config.priority_exponent;
  q.seed = config.seed;
  return q;
}

AcConfig MakeAcConfig(const ExperimentConfig& config, const Environment& env) {
  AcConfig a;
  a.num_agents = env.num_agents();
  for (int i = 0; i < a.num_agents; ++i) a.num_actions.push_back(env.num_actions(i));
  a.observation_size = env.observation_size();
  a.state_size = env.state_size();
  a.policy_hidden = config.policy_hidden;
  a.critic_hidden = config.critic_hidden;
  a.lambda = config.lambda;
  a.sw = config.sw;
  a.mode = config.algorithm == "vanilla" ? SocialMode::kShort : SocialMode::kLong;
  a.train_selfish = config.algorithm != "vanilla";
  a.train_social = config.algorithm == "barocco" || config.algorithm == "vanilla";
  a.crs = config.algorithm == "crs";
  a.gamma = config.gamma;
  a.adam.learning_rate = config.learning_rate;
  a.adam.decay = config.lr_decay;
  a.batch_size = config.batch_size;
  a.minibatch_size = config.minibatch_size;
  a.epochs = config.epochs;
  a.clip = config.clip;
  a.entropy_coef = config.entropy_coef;
  a.entropy_decay = config.entropy_decay;
  a.seed = config.seed;
  return a;
}

MetricRow Evaluate(const ExperimentConfig& config, const Environment& prototype,
                   std::int64_t step,
                   const std::function<std::vector<int>(
                       const std::vector<std::vector<double>>&)>& policy) {
  const int n = prototype.num_agents();
  std::vector<double> payoffs(n, 0.0), scores(n, 0.0), lengths(n, 0.0);
  for (int k = 0; k < config.eval_episodes; ++k) {
    std::unique_ptr<Environment> env = prototype.Clone();
    env->Reset(MixSeed(config.seed ^ kEvalSeedStream, static_cast<std::uint64_t>(k)));
    std::vector<std::vector<double>> obs = ObserveAll(*env);
    std::vector<bool> ended(n, false);
    std::vector<double> length(n, 0.0);
    int remaining = n;
    bool done = false;
    while (!done && remaining > 0) {
      const std::vector<int> actions = policy(obs);
      StepResult result = env->Step(actions);
      for (int i = 0; i < n; ++i) {
        if (ended[i]) continue;
        payoffs[i] += result.rewards[i];
        length[i] += 1.0;
        if (result.terminated[i]) {
          ended[i] = true;
          --remaining;
        }
      }
      done = result.done;
      obs = std::move(result.observations);
    }
    const std::vector<double> s = env->EpisodeScores();
    for (int i = 0; i < n; ++i) {
      scores[i] += s[i];
      lengths[i] += length[i];
    }
  }
  const double m = static_cast<double>(config.eval_episodes);
  for (int i = 0; i < n; ++i) {
    payoffs[i] /= m;
    scores[i] /= m;
    lengths[i] /= m;
  }
  return MakeMetricRow(step, payoffs, scores, lengths);
}

RunOutput Run(const ExperimentConfig& config, const RunOptions& options) {
  config.Validate();
  const std::string hash = ConfigHash(config);
  if (config.framework == "q") return RunQ(config, options, hash);
  if (config.framework == "ac") return RunAc(config, options, hash);
  if (config.framework == "tabular") return RunTabular(config, options, hash);
  return RunExhaustive(config, options, hash);
}

}  // namespace barocco
