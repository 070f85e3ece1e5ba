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

#ifndef BAROCCO_WELFARE_WELFARE_H_
#define BAROCCO_WELFARE_WELFARE_H_

#include <span>
#include <string>
#include <string_view>

namespace barocco {

// Per-agent rewards or returns.
using PayoffView = std::span<const double>;

enum class SwChoice { kSum, kMin };

std::string_view SwName(SwChoice sw);
// Accepts "sum" / "min"; throws ConfigError otherwise.
SwChoice ParseSw(std::string_view name);

// Sum or minimum of the payoffs. Throws DomainError for an empty vector.
double SocialWelfare(SwChoice sw, PayoffView payoffs);

// (1 - lambda) r_i + lambda SW(r). Throws ConfigError for lambda outside
// [0, 1] and DomainError for a bad agent index.
double CrsReward(int agent, PayoffView rewards, double lambda, SwChoice sw);

// (1 - lambda) selfish + lambda social; exact at lambda 0 and 1.
double Combine(double selfish, double social, double lambda);

// Throws ConfigError unless 0 <= lambda <= 1.
void CheckLambda(double lambda);

// Mean absolute pairwise difference over 2 N^2 mean. Entries must be
// nonnegative (DomainError otherwise); an all-zero vector has index 0.
double Gini(PayoffView payoffs);
// 1 - Gini.
double Fairness(PayoffView payoffs);

}  // namespace barocco

#endif  // BAROCCO_WELFARE_WELFARE_H_
