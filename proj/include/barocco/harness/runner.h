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

#ifndef BAROCCO_HARNESS_RUNNER_H_
#define BAROCCO_HARNESS_RUNNER_H_

#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "barocco/ac/ac_learner.h"
#include "barocco/envs/environment.h"
#include "barocco/harness/config.h"
#include "barocco/harness/metrics.h"
#include "barocco/q/q_learner.h"

namespace barocco {

struct RunOptions {
  std::ostream* log = nullptr;         // header plus one CSV row per evaluation
  std::ostream* trajectory = nullptr;  // per-step training dump
  std::ostream* diagnostics = nullptr; // per-update learner statistics
  std::string checkpoint_out;          // written after training when set
  std::string checkpoint_in;           // loaded before training when set
  bool eval_only = false;              // with checkpoint_in: one evaluation row
  // Training-time joint actions, for behavioral comparisons in tests.
  std::function<void(std::int64_t, const std::vector<int>&)> on_action;
};

struct RunOutput {
  std::string config_hash;
  std::vector<MetricRow> rows;
};

// Environment for env names other than the allocator.
std::unique_ptr<Environment> MakeEnvironment(const ExperimentConfig& config);

QConfig MakeQConfig(const ExperimentConfig& config, const Environment& env);
AcConfig MakeAcConfig(const ExperimentConfig& config, const Environment& env);

// Greedy rollout of eval_episodes episodes; an episode stops when it is done
// or every agent has terminated once. Rewards count until each agent's first
// termination.
MetricRow Evaluate(const ExperimentConfig& config, const Environment& prototype,
                   std::int64_t step,
                   const std::function<std::vector<int>(
                       const std::vector<std::vector<double>>&)>& policy);

// Throws ConfigError for invalid configs.
RunOutput Run(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace barocco

#endif  // BAROCCO_HARNESS_RUNNER_H_
