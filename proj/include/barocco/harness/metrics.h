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

#ifndef BAROCCO_HARNESS_METRICS_H_
#define BAROCCO_HARNESS_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

namespace barocco {

struct MetricRow {
  std::int64_t step = 0;
  std::vector<double> payoffs;  // per agent, undiscounted
  double total = 0.0;
  std::vector<double> scores;   // lifetimes, apples or payoffs
  double score_sum = 0.0;
  double fairness = 1.0;        // 1 - Gini(scores)
  std::vector<double> lengths;  // per agent episode lengths

  std::string ToCsv() const;
};

// Fills the totals and fairness from the per-agent entries.
MetricRow MakeMetricRow(std::int64_t step, std::vector<double> payoffs,
                        std::vector<double> scores, std::vector<double> lengths);

// "# config_hash=<hash> columns=step,payoff_0,..."
std::string MetricHeader(const std::string& config_hash, int num_agents);

// Inverse of ToCsv for a known agent count; throws DomainError on bad input.
MetricRow ParseMetricRow(const std::string& line, int num_agents);

}  // namespace barocco

#endif  // BAROCCO_HARNESS_METRICS_H_
