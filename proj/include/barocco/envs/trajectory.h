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

#ifndef BAROCCO_ENVS_TRAJECTORY_H_
#define BAROCCO_ENVS_TRAJECTORY_H_

#include <cstdint>
#include <ostream>
#include <span>

#include "barocco/envs/environment.h"

namespace barocco {

// Comma-separated per-step dump: step,agent,action,reward,terminated.
class TrajectoryWriter {
 public:
  explicit TrajectoryWriter(std::ostream& out);

  void Record(std::int64_t step, std::span<const int> joint_action,
              const StepResult& result);

 private:
  std::ostream& out_;
};

}  // namespace barocco

#endif  // BAROCCO_ENVS_TRAJECTORY_H_
