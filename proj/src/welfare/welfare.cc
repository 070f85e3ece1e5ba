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

#include "barocco/welfare/welfare.h"

#include <algorithm>
#include <cmath>

#include "barocco/common/errors.h"

namespace barocco {

std::string_view SwName(SwChoice sw) {
  return sw == SwChoice::kSum ? "sum" : "min";
}

SwChoice ParseSw(std::string_view name) {
  if (name == "sum") return SwChoice::kSum;
  if (name == "min") return SwChoice::kMin;
  throw ConfigError("unknown social welfare function '" + std::string(name) +
                    "' (expected sum or min)");
}

double SocialWelfare(SwChoice sw, PayoffView payoffs) {
  if (payoffs.empty()) throw DomainError("SocialWelfare: empty payoff vector");
  if (sw == SwChoice::kMin) {
    return *std::min_element(payoffs.begin(), payoffs.end());
  }
  double total = 0.0;
  for (double p : payoffs) total += p;
  return total;
}

void CheckLambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("prosociality coefficient must lie in [0, 1]");
  }
}

double Combine(double selfish, double social, double lambda) {
  CheckLambda(lambda);
  if (lambda == 0.0) return selfish;
  if (lambda == 1.0) return social;
  const double mixed = (1.0 - lambda) * selfish + lambda * social;
  // Rounding must not leave the segment between the two values.
  return std::clamp(mixed, std::min(selfish, social), std::max(selfish, social));
}

double CrsReward(int agent, PayoffView rewards, double lambda, SwChoice sw) {
  CheckLambda(lambda);
  if (agent < 0 || agent >= static_cast<int>(rewards.size())) {
    throw DomainError("CrsReward: agent index out of range");
  }
  return Combine(rewards[agent], SocialWelfare(sw, rewards), lambda);
}

double Gini(PayoffView payoffs) {
  if (payoffs.empty()) throw DomainError("Gini: empty payoff vector");
  double total = 0.0;
  for (double p : payoffs) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw DomainError("Gini: entries must be finite and nonnegative");
    }
    total += p;
  }
  if (total == 0.0) return 0.0;
  const double n = static_cast<double>(payoffs.size());
  const double mean = total / n;
  double pairwise = 0.0;
  for (double a : payoffs) {
    for (double b : payoffs) pairwise += std::abs(a - b);
  }
  return pairwise / (2.0 * n * n * mean);
}

double Fairness(PayoffView payoffs) { return 1.0 - Gini(payoffs); }

}  // namespace barocco
