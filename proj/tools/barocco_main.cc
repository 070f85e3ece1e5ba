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

// Command-line entry point: run, mpd-sweep, verify.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "barocco/common/errors.h"
#include "barocco/harness/config.h"
#include "barocco/harness/runner.h"
#include "barocco/harness/verify.h"
#include "barocco/tabular/q_table.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerify = 2;

std::vector<double> ParseGrid(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = spec.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw barocco::ConfigError("grid must look like start:stop:step");
  }
  const double start = std::stod(spec.substr(0, a));
  const double stop = std::stod(spec.substr(a + 1, b - a - 1));
  const double step = std::stod(spec.substr(b + 1));
  if (!(step > 0.0) || stop < start) throw barocco::ConfigError("bad grid '" + spec + "'");
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long k = 0; k <= count; ++k) {
    // Snap to 1e-9 so 0.1-steps print as written.
    grid.push_back(std::round((start + k * step) * 1e9) / 1e9);
  }
  return grid;
}

std::string OutputPath(const std::string& requested, const std::string& fallback) {
  const char* dir = std::getenv("BAROCCO_OUT_DIR");
  std::filesystem::path path = requested.empty() ? fallback : requested;
  if (dir != nullptr && *dir != '\0' && path.is_relative()) {
    std::filesystem::create_directories(dir);
    path = std::filesystem::path(dir) / path;
  }
  return path.string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selfish/social balancing for multi-agent reinforcement learning"};
  app.require_subcommand(1);

  std::string config_path, out_path, trajectory_path, diagnostics_path;
  std::string checkpoint_out, checkpoint_in;
  std::vector<std::string> overrides;
  std::int64_t seed = -1;
  bool eval_only = false;
  CLI::App* run = app.add_subcommand("run", "Train and evaluate one configuration");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_path, "Metric log path (appended)");
  run->add_option("--set", overrides, "key=value override, repeatable");
  run->add_option("--trajectory", trajectory_path, "Per-step CSV dump");
  run->add_option("--diagnostics", diagnostics_path, "Learner statistics");
  run->add_option("--save-checkpoint", checkpoint_out, "Write parameters after training");
  run->add_option("--load-checkpoint", checkpoint_in, "Load parameters before training");
  run->add_flag("--eval-only", eval_only, "Evaluate the loaded checkpoint only");

  std::string grid = "0:1:0.1";
  int seeds = 3;
  std::int64_t iterations = 100000;
  CLI::App* sweep = app.add_subcommand("mpd-sweep", "Tabular lambda sweep on the matrix game");
  sweep->add_option("--grid", grid, "start:stop:step");
  sweep->add_option("--seeds", seeds, "Seeds 0..k-1")->check(CLI::PositiveNumber);
  sweep->add_option("--iterations", iterations, "Training iterations");

  CLI::App* verify = app.add_subcommand("verify", "Run the analytic oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      barocco::ExperimentConfig config = barocco::LoadConfig(config_path);
      for (const std::string& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw barocco::ConfigError("--set expects key=value");
        barocco::SetConfigValue(config, kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
      if (config.algorithm == "selfish") config.lambda = 0.0;
      if (config.algorithm == "vanilla") config.lambda = 1.0;
      config.Validate();
      if (eval_only && checkpoint_in.empty()) {
        throw barocco::ConfigError("--eval-only needs --load-checkpoint");
      }

      const std::string hash = barocco::ConfigHash(config);
      std::ofstream log_file, trajectory_file, diagnostics_file;
      barocco::RunOptions options;
      options.eval_only = eval_only;
      options.checkpoint_in = checkpoint_in;
      if (!checkpoint_out.empty()) options.checkpoint_out = OutputPath(checkpoint_out, "");
      const char* dir = std::getenv("BAROCCO_OUT_DIR");
      if (!out_path.empty() || (dir != nullptr && *dir != '\0')) {
        const std::string path = OutputPath(out_path, "run_" + hash + ".csv");
        log_file.open(path, std::ios::app);
        if (!log_file) throw barocco::ConfigError("cannot open log '" + path + "'");
        options.log = &log_file;
      } else {
        options.log = &std::cout;
      }
      if (!trajectory_path.empty()) {
        trajectory_file.open(OutputPath(trajectory_path, ""));
        options.trajectory = &trajectory_file;
      }
      if (!diagnostics_path.empty()) {
        diagnostics_file.open(OutputPath(diagnostics_path, ""), std::ios::app);
        options.diagnostics = &diagnostics_file;
      }
      barocco::Run(config, options);
      return kExitOk;
    }
    if (sweep->parsed()) {
      const std::vector<double> lambdas = ParseGrid(grid);
      std::vector<std::uint64_t> seed_list;
      for (int s = 0; s < seeds; ++s) seed_list.push_back(s);
      barocco::MpdOptions options;
      options.iterations = iterations;
      const char* rows = "DC";
      const char* cols = "DCS";
      std::cout << "lambda,seed,row_action,column_action\n";
      for (const auto& o : barocco::MpdSweep(lambdas, seed_list, options)) {
        std::cout << o.lambda << ',' << o.seed << ',' << rows[o.row_action] << ','
                  << cols[o.column_action] << '\n';
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      bool all = true;
      for (const barocco::CheckResult& c : barocco::RunVerification()) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << '\n';
        all = all && c.passed;
      }
      return all ? kExitOk : kExitVerify;
    }
  } catch (const barocco::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const barocco::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
