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

#ifndef BAROCCO_ENVS_MATRIX_GAME_H_
#define BAROCCO_ENVS_MATRIX_GAME_H_

#include <array>
#include <string>
#include <vector>

#include "barocco/envs/environment.h"

namespace barocco {

// Two-player one-shot game given by payoff tables indexed [row][column].
struct MatrixGameSpec {
  std::vector<std::string> row_actions;
  std::vector<std::string> column_actions;
  std::vector<std::vector<std::array<double, 2>>> payoffs;
};

// Rows Defect/Cooperate, columns Defect/Cooperate/Sacrifice.
MatrixGameSpec ModifiedPrisonersDilemma();

namespace mpd {
inline constexpr int kDefect = 0;
inline constexpr int kCooperate = 1;
inline constexpr int kSacrifice = 2;
}  // namespace mpd

// Every step is a complete episode: constant observation, both agents
// terminate, done is set.
class MatrixGame : public Environment {
 public:
  explicit MatrixGame(MatrixGameSpec spec);

  const MatrixGameSpec& spec() const { return spec_; }

  std::string_view name() const override { return "mpd"; }
  int num_agents() const override { return 2; }
  int num_actions(int agent) const override;
  int observation_size() const override { return 1; }
  int state_size() const override { return 1; }
  void Reset(std::uint64_t seed) override;
  StepResult Step(std::span<const int> joint_action) override;
  std::vector<double> Observe(int agent) const override;
  std::vector<double> GlobalState() const override { return {1.0}; }
  std::vector<double> EpisodeScores() const override { return last_payoffs_; }
  std::string_view score_name() const override { return "payoff"; }
  std::unique_ptr<Environment> Clone() const override;

 private:
  MatrixGameSpec spec_;
  std::vector<double> last_payoffs_{0.0, 0.0};
};

}  // namespace barocco

#endif  // BAROCCO_ENVS_MATRIX_GAME_H_
