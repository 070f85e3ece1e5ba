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

#ifndef BAROCCO_HARNESS_VERIFY_H_
#define BAROCCO_HARNESS_VERIFY_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "barocco/welfare/welfare.h"

namespace barocco {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  // Long-term social target under test; replaceable for mutation checks.
  std::function<double(std::span<const double>, SwChoice)> long_target;
};

// Analytic oracles: allocator and termination tables, value factorization,
// sum commutativity, mixer monotonicity, counterfactual baseline, gradient
// checks and the PPO cases.
std::vector<CheckResult> RunVerification(const VerifyOptions& options = {});

}  // namespace barocco

#endif  // BAROCCO_HARNESS_VERIFY_H_
