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

#ifndef BAROCCO_NUMERICS_OPTIM_H_
#define BAROCCO_NUMERICS_OPTIM_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace barocco {

struct AdamOptions {
  double learning_rate = 5e-4;
  // Multiplies the learning rate after every step.
  double decay = 1.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamState() = default;
  AdamState(std::size_t num_parameters, const AdamOptions& options);

  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::int64_t step = 0;
  double learning_rate = 5e-4;
  double decay = 1.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One bias-corrected Adam update in place. Throws ShapeError on size
// mismatch and NumericError on a non-finite gradient (state untouched).
void AdamStep(std::span<double> params, std::span<const double> grads,
              AdamState& state);

struct LossAndGrad {
  double loss;
  double grad;
};

// (target - prediction)^2; the target is a constant.
LossAndGrad TdLoss(double prediction, double target);

// Clipped surrogate -min(r A, clip(r, 1 - eps, 1 + eps) A) and its
// derivative with respect to the ratio r. Throws NumericError for r <= 0.
LossAndGrad PpoLoss(double ratio, double advantage, double clip);

}  // namespace barocco

#endif  // BAROCCO_NUMERICS_OPTIM_H_
