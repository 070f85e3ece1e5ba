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

#include "barocco/harness/config.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "barocco/common/errors.h"

namespace barocco {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseInteger(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config: '" + std::string(key) + "' expects an integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

double ParseReal(std::string_view key, std::string_view value) {
  const std::string text(value);
  char* end = nullptr;
  const double out = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(out)) {
    throw ConfigError("config: '" + std::string(key) + "' expects a real, got '" +
                      text + "'");
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: '" + std::string(key) + "' expects true/false");
}

std::vector<int> ParseWidths(std::string_view key, std::string_view value) {
  std::vector<int> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(ParseInteger<int>(key, Trim(value.substr(0, comma))));
    if (out.back() <= 0) throw ConfigError("config: layer widths must be positive");
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("config: '" + std::string(key) + "' is empty");
  return out;
}

std::string FormatReal(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::string FormatWidths(const std::vector<int>& widths) {
  std::string out;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(widths[k]);
  }
  return out;
}

struct Field {
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, std::string_view, std::string_view)> set;
};

template <typename T>
Field IntegerField(T ExperimentConfig::*member) {
  return {[member](const ExperimentConfig& c) { return std::to_string(c.*member); },
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.*member = ParseInteger<T>(k, v);
          }};
}

Field RealField(double ExperimentConfig::*member) {
  return {[member](const ExperimentConfig& c) { return FormatReal(c.*member); },
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.*member = ParseReal(k, v);
          }};
}

Field BoolField(bool ExperimentConfig::*member) {
  return {[member](const ExperimentConfig& c) {
            return std::string(c.*member ? "true" : "false");
          },
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.*member = ParseBool(k, v);
          }};
}

Field StringField(std::string ExperimentConfig::*member) {
  return {[member](const ExperimentConfig& c) { return c.*member; },
          [member](ExperimentConfig& c, std::string_view, std::string_view v) {
            c.*member = std::string(v);
          }};
}

Field WidthsField(std::vector<int> ExperimentConfig::*member) {
  return {[member](const ExperimentConfig& c) { return FormatWidths(c.*member); },
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.*member = ParseWidths(k, v);
          }};
}

const std::map<std::string, Field, std::less<>>& Fields() {
  using C = ExperimentConfig;
  static const auto* fields = new std::map<std::string, Field, std::less<>>{
      {"env", StringField(&C::env)},
      {"framework", StringField(&C::framework)},
      {"algorithm", StringField(&C::algorithm)},
      {"sw",
       {[](const C& c) { return std::string(SwName(c.sw)); },
        [](C& c, std::string_view, std::string_view v) { c.sw = ParseSw(v); }}},
      {"lambda", RealField(&C::lambda)},
      {"gamma", RealField(&C::gamma)},
      {"seed", IntegerField(&C::seed)},
      {"total_steps", IntegerField(&C::total_steps)},
      {"eval_interval", IntegerField(&C::eval_interval)},
      {"eval_episodes", IntegerField(&C::eval_episodes)},
      {"horizon", IntegerField(&C::horizon)},
      {"learning_rate", RealField(&C::learning_rate)},
      {"lr_decay", RealField(&C::lr_decay)},
      {"batch_size", IntegerField(&C::batch_size)},
      {"q_hidden", WidthsField(&C::q_hidden)},
      {"mixer_embed", IntegerField(&C::mixer_embed)},
      {"hyper_hidden", IntegerField(&C::hyper_hidden)},
      {"n_step", IntegerField(&C::n_step)},
      {"buffer_size", IntegerField(&C::buffer_size)},
      {"target_period", IntegerField(&C::target_period)},
      {"train_every", IntegerField(&C::train_every)},
      {"learning_starts", IntegerField(&C::learning_starts)},
      {"epsilon_start", RealField(&C::epsilon_start)},
      {"epsilon_decay", RealField(&C::epsilon_decay)},
      {"epsilon_floor", RealField(&C::epsilon_floor)},
      {"fingerprint", BoolField(&C::fingerprint)},
      {"priority_exponent", RealField(&C::priority_exponent)},
      {"policy_hidden", WidthsField(&C::policy_hidden)},
      {"critic_hidden", WidthsField(&C::critic_hidden)},
      {"minibatch_size", IntegerField(&C::minibatch_size)},
      {"epochs", IntegerField(&C::epochs)},
      {"clip", RealField(&C::clip)},
      {"entropy_coef", RealField(&C::entropy_coef)},
      {"entropy_decay", RealField(&C::entropy_decay)},
      {"tabular_learning_rate", RealField(&C::tabular_learning_rate)},
  };
  return *fields;
}

bool IsOneOf(std::string_view value, std::initializer_list<std::string_view> options) {
  for (std::string_view o : options) {
    if (value == o) return true;
  }
  return false;
}

// selfish and vanilla pin lambda.
void ApplyAlgorithm(ExperimentConfig& c) {
  if (c.algorithm == "selfish") c.lambda = 0.0;
  if (c.algorithm == "vanilla") c.lambda = 1.0;
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (!IsOneOf(env, {"mpd", "allocator", "eldorado", "eldorado_lite", "harvest",
                     "harvest_lite"})) {
    throw ConfigError("config: unknown env '" + env + "'");
  }
  if (!IsOneOf(framework, {"q", "ac", "tabular", "exhaustive"})) {
    throw ConfigError("config: unknown framework '" + framework + "'");
  }
  if (!IsOneOf(algorithm, {"barocco", "crs", "vanilla", "selfish"})) {
    throw ConfigError("config: unknown algorithm '" + algorithm + "'");
  }
  CheckLambda(lambda);
  if (algorithm == "selfish" && lambda != 0.0) {
    throw ConfigError("config: selfish requires lambda = 0");
  }
  if (algorithm == "vanilla" && lambda != 1.0) {
    throw ConfigError("config: vanilla requires lambda = 1");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("config: gamma must lie in [0, 1)");
  if (total_steps <= 0 || eval_interval <= 0 || eval_episodes <= 0) {
    throw ConfigError("config: total_steps, eval_interval, eval_episodes must be positive");
  }
  if (horizon < 0) throw ConfigError("config: horizon must be >= 0");
  if (env == "allocator" && framework != "exhaustive") {
    throw ConfigError("config: env allocator runs only with framework exhaustive");
  }
  if (framework == "exhaustive" && env != "allocator") {
    throw ConfigError("config: framework exhaustive applies only to env allocator");
  }
  if (framework == "tabular") {
    if (env != "mpd") {
      throw ConfigError("config: framework tabular applies only to env mpd");
    }
    if (!IsOneOf(algorithm, {"crs", "selfish"})) {
      throw ConfigError(
          "config: tabular learners mix rewards; use algorithm crs or selfish");
    }
    if (!(tabular_learning_rate > 0.0 && tabular_learning_rate <= 1.0)) {
      throw ConfigError("config: tabular_learning_rate must lie in (0, 1]");
    }
  }
  if (!(learning_rate > 0.0) || !(lr_decay > 0.0 && lr_decay <= 1.0)) {
    throw ConfigError("config: bad learning rate schedule");
  }
  if (batch_size <= 0) throw ConfigError("config: batch_size must be positive");
  if (framework == "q") {
    if (buffer_size < 2 || n_step < 1 || target_period < 1 || train_every < 1 ||
        mixer_embed < 1 || hyper_hidden < 1 || learning_starts < 0) {
      throw ConfigError("config: bad q framework sizes");
    }
    if (priority_exponent < 0.0) {
      throw ConfigError("config: priority_exponent must be >= 0");
    }
  }
  if (framework == "ac" && (minibatch_size < 1 || epochs < 1 || !(clip > 0.0))) {
    throw ConfigError("config: bad ac framework sizes");
  }
}

ExperimentConfig DefaultConfig(std::string_view env, std::string_view framework) {
  ExperimentConfig c;
  c.env = std::string(env);
  c.framework = std::string(framework);
  const bool harvest = env == "harvest" || env == "harvest_lite";
  if (framework == "q") {
    c.learning_rate = 5e-4;
    c.lr_decay = 0.999995;
    c.batch_size = harvest ? 128 : 64;
    c.q_hidden = harvest ? std::vector<int>{64, 64} : std::vector<int>{64, 64, 64};
    c.epsilon_decay = harvest ? 0.999975 : 0.99999;
    c.buffer_size = harvest ? 250000 : 500000;
  } else if (framework == "ac") {
    c.learning_rate = harvest ? 1e-3 : 5e-4;
    c.lr_decay = harvest ? 0.9998 : 0.999998;
    c.batch_size = harvest ? 3000 : 2000;
    c.minibatch_size = 500;
    c.epochs = harvest ? 3 : 10;
    c.policy_hidden = harvest ? std::vector<int>{64, 64, 64} : std::vector<int>{128, 128};
    c.critic_hidden = c.policy_hidden;
    c.entropy_decay = harvest ? 0.998 : 0.99998;
  } else if (framework == "tabular") {
    c.algorithm = "crs";
    c.total_steps = 100000;
    c.eval_interval = 100000;
    c.eval_episodes = 1;
  } else if (framework == "exhaustive") {
    c.total_steps = 1;
    c.eval_interval = 1;
    c.eval_episodes = 1;
  }
  if (env == "eldorado" || env == "harvest") {
    c.total_steps = 5000000;
    c.eval_interval = 100000;
  }
  if (env == "eldorado_lite" || env == "harvest_lite") {
    // Desk scale: shorter epsilon schedule, smaller replay and batches.
    c.total_steps = 20000;
    c.eval_interval = 5000;
    c.eval_episodes = 2;
    if (framework == "q") {
      c.buffer_size = 50000;
      c.target_period = 500;
      c.epsilon_decay = 0.99985;
      c.epsilon_floor = 0.02;
      c.lr_decay = 1.0;
    } else if (framework == "ac") {
      c.batch_size = 500;
      c.minibatch_size = 125;
      c.epochs = 4;
      c.lr_decay = 1.0;
      c.entropy_decay = 0.999;
    }
  }
  return c;
}

void SetConfigValue(ExperimentConfig& config, std::string_view key,
                    std::string_view value) {
  const auto it = Fields().find(key);
  if (it == Fields().end()) {
    throw ConfigError("config: unknown key '" + std::string(key) + "'");
  }
  it->second.set(config, key, value);
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [key, field] : Fields()) keys.push_back(key);
  return keys;
}

ExperimentConfig ParseConfig(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": expected 'key = value'");
    }
    const std::string key(Trim(view.substr(0, eq)));
    const std::string value(Trim(view.substr(eq + 1)));
    if (Fields().find(key) == Fields().end()) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": unknown key '" + key + "'");
    }
    if (seen[key]++ > 0) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": duplicate key '" + key + "'");
    }
    entries.emplace_back(key, value);
  }
  std::string env = "eldorado_lite", framework = "q";
  for (const auto& [key, value] : entries) {
    if (key == "env") env = value;
    if (key == "framework") framework = value;
  }
  ExperimentConfig config = DefaultConfig(env, framework);
  for (const auto& [key, value] : entries) SetConfigValue(config, key, value);
  ApplyAlgorithm(config);
  config.Validate();
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str());
}

std::string SerializeConfig(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [key, field] : Fields()) {
    out += key + " = " + field.get(config) + "\n";
  }
  return out;
}

std::string ConfigHash(const ExperimentConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : SerializeConfig(config)) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace barocco
