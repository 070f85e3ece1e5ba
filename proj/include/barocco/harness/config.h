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

#ifndef BAROCCO_HARNESS_CONFIG_H_
#define BAROCCO_HARNESS_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "barocco/welfare/welfare.h"

namespace barocco {

// Complete description of one run. Text form: one "key = value" per line,
// '#' starts a comment, unknown keys are errors. "env" and "framework"
// select the defaults that the remaining keys override.
struct ExperimentConfig {
  // mpd, allocator, eldorado, eldorado_lite, harvest, harvest_lite
  std::string env = "eldorado_lite";
  // q, ac, tabular (mpd only), exhaustive (allocator only)
  std::string framework = "q";
  // barocco, crs, vanilla, selfish
  std::string algorithm = "barocco";
  SwChoice sw = SwChoice::kSum;
  double lambda = 1.0;
  double gamma = 0.99;
  std::uint64_t seed = 0;
  std::int64_t total_steps = 20000;
  std::int64_t eval_interval = 5000;
  int eval_episodes = 2;
  // 0 keeps the environment default.
  int horizon = 0;

  // Shared by both frameworks.
  double learning_rate = 5e-4;
  double lr_decay = 0.999995;
  int batch_size = 64;

  // Q framework.
  std::vector<int> q_hidden = {64, 64, 64};
  int mixer_embed = 32;
  int hyper_hidden = 64;
  int n_step = 5;
  std::int64_t buffer_size = 500000;
  int target_period = 2000;
  int train_every = 1;
  int learning_starts = 0;
  double epsilon_start = 1.0;
  double epsilon_decay = 0.99999;
  double epsilon_floor = 0.0;
  bool fingerprint = true;
  double priority_exponent = 0.0;

  // Actor-Critic framework.
  std::vector<int> policy_hidden = {128, 128};
  std::vector<int> critic_hidden = {128, 128};
  int minibatch_size = 500;
  int epochs = 10;
  double clip = 0.2;
  double entropy_coef = 0.05;
  double entropy_decay = 0.99998;

  // Tabular framework.
  double tabular_learning_rate = 0.1;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

  // Throws ConfigError naming the reason a combination cannot run.
  void Validate() const;
};

// Hyperparameter-table defaults for the (env, framework) pair; lite
// environments get desk-scale budgets.
ExperimentConfig DefaultConfig(std::string_view env, std::string_view framework);

ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::string& path);
// Canonical form: every key, sorted, values printed losslessly.
std::string SerializeConfig(const ExperimentConfig& config);
// FNV-1a 64 of the canonical form, 16 hex digits.
std::string ConfigHash(const ExperimentConfig& config);
// Sets one key from its text value; used by the parser and CLI overrides.
void SetConfigValue(ExperimentConfig& config, std::string_view key,
                    std::string_view value);
std::vector<std::string> ConfigKeys();

}  // namespace barocco

#endif  // BAROCCO_HARNESS_CONFIG_H_
