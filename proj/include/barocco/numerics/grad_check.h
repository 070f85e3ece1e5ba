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

#ifndef BAROCCO_NUMERICS_GRAD_CHECK_H_
#define BAROCCO_NUMERICS_GRAD_CHECK_H_

#include <functional>
#include <span>

#include "barocco/numerics/dense_network.h"
#include "barocco/numerics/matrix.h"

namespace barocco {

struct OutputLoss {
  double value;
  Matrix grad;  // dL/d(output), same shape as the output batch
};

// Scalar loss of a network's output batch.
using OutputLossFn = std::function<OutputLoss(const Matrix& output)>;

struct GradCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  // Denominator floor of the relative error, so parameters with vanishing
  // gradients are judged on absolute error.
  double floor = 1e-6;
  // A parameter that fails at `step` is probed again at this step; a ReLU
  // kink inside the first interval does not survive the second one, a wrong
  // gradient fails both. 0 disables the retry.
  double kink_step = 1e-7;
  // Applied to the analytic gradient before comparison (mutation testing).
  std::function<void(std::span<double>)> perturb_analytic;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::size_t worst_parameter = 0;
  bool passed = false;
};

// Compares Backward() against central finite differences of the loss for
// every parameter: |a - n| / max(|a|, |n|, floor), keeping the smaller
// error of the two probe steps.
GradCheckReport GradCheck(const DenseNetwork& net, const Matrix& input,
                          const OutputLossFn& loss,
                          const GradCheckOptions& options = {});

}  // namespace barocco

#endif  // BAROCCO_NUMERICS_GRAD_CHECK_H_
