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

#include "barocco/envs/trajectory.h"

#include <cstdio>

#include "barocco/common/errors.h"

namespace barocco {

TrajectoryWriter::TrajectoryWriter(std::ostream& out) : out_(out) {
  out_ << "step,agent,action,reward,terminated\n";
}

void TrajectoryWriter::Record(std::int64_t step,
                              std::span<const int> joint_action,
                              const StepResult& result) {
  if (joint_action.size() != result.rewards.size()) {
    throw ShapeError("TrajectoryWriter: action and reward counts differ");
  }
  char reward[32];
  for (std::size_t i = 0; i < joint_action.size(); ++i) {
    std::snprintf(reward, sizeof(reward), "%.17g", result.rewards[i]);
    out_ << step << ',' << i << ',' << joint_action[i] << ',' << reward << ','
         << (result.terminated[i] ? 1 : 0) << '\n';
  }
}

}  // namespace barocco
