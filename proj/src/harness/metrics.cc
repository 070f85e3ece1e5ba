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

#include "barocco/harness/metrics.h"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "barocco/common/errors.h"
#include "barocco/welfare/welfare.h"

namespace barocco {
namespace {

void AppendReal(std::string& out, double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), ",%.17g", x);
  out += buffer;
}

}  // namespace

MetricRow MakeMetricRow(std::int64_t step, std::vector<double> payoffs,
                        std::vector<double> scores, std::vector<double> lengths) {
  if (payoffs.size() != scores.size() || payoffs.size() != lengths.size()) {
    throw ShapeError("MakeMetricRow: per-agent vectors differ in length");
  }
  MetricRow row;
  row.step = step;
  row.payoffs = std::move(payoffs);
  row.scores = std::move(scores);
  row.lengths = std::move(lengths);
  for (double p : row.payoffs) row.total += p;
  for (double s : row.scores) row.score_sum += s;
  row.fairness = Fairness(row.scores);
  return row;
}

std::string MetricRow::ToCsv() const {
  std::string out = std::to_string(step);
  for (double p : payoffs) AppendReal(out, p);
  AppendReal(out, total);
  for (double s : scores) AppendReal(out, s);
  AppendReal(out, score_sum);
  AppendReal(out, fairness);
  for (double l : lengths) AppendReal(out, l);
  return out;
}

std::string MetricHeader(const std::string& config_hash, int num_agents) {
  std::string columns = "step";
  for (int i = 0; i < num_agents; ++i) columns += ",payoff_" + std::to_string(i);
  columns += ",total";
  for (int i = 0; i < num_agents; ++i) columns += ",score_" + std::to_string(i);
  columns += ",score_sum,fairness";
  for (int i = 0; i < num_agents; ++i) columns += ",length_" + std::to_string(i);
  return "# config_hash=" + config_hash + " columns=" + columns;
}

MetricRow ParseMetricRow(const std::string& line, int num_agents) {
  std::vector<double> values;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    char* end = nullptr;
    values.push_back(std::strtod(cell.c_str(), &end));
    if (end == cell.c_str()) throw DomainError("ParseMetricRow: bad cell '" + cell + "'");
  }
  const std::size_t n = num_agents;
  if (values.size() != 1 + 3 * n + 3) {
    throw DomainError("ParseMetricRow: wrong column count");
  }
  MetricRow row;
  row.step = static_cast<std::int64_t>(values[0]);
  std::size_t k = 1;
  for (std::size_t i = 0; i < n; ++i) row.payoffs.push_back(values[k++]);
  row.total = values[k++];
  for (std::size_t i = 0; i < n; ++i) row.scores.push_back(values[k++]);
  row.score_sum = values[k++];
  row.fairness = values[k++];
  for (std::size_t i = 0; i < n; ++i) row.lengths.push_back(values[k++]);
  return row;
}

}  // namespace barocco
