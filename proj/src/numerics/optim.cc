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

#include "barocco/numerics/optim.h"

#include <algorithm>
#include <cmath>

#include "barocco/common/errors.h"
#include "barocco/numerics/kernels.h"

namespace barocco {

AdamState::AdamState(std::size_t num_parameters, const AdamOptions& options)
    : first_moment(num_parameters, 0.0),
      second_moment(num_parameters, 0.0),
      learning_rate(options.learning_rate),
      decay(options.decay),
      beta1(options.beta1),
      beta2(options.beta2),
      epsilon(options.epsilon) {}

void AdamStep(std::span<double> params, std::span<const double> grads,
              AdamState& state) {
  if (params.size() != grads.size() ||
      params.size() != state.first_moment.size() ||
      params.size() != state.second_moment.size()) {
    throw ShapeError("AdamStep: parameter, gradient and moment sizes differ");
  }
  for (double g : grads) {
    if (!std::isfinite(g)) throw NumericError("AdamStep: non-finite gradient");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  kernels::AdamCoefficients c;
  c.beta1 = state.beta1;
  c.beta2 = state.beta2;
  c.epsilon = state.epsilon;
  c.step_size = state.learning_rate / (1.0 - std::pow(state.beta1, t));
  c.second_correction = 1.0 / (1.0 - std::pow(state.beta2, t));
  kernels::AdamUpdate(params.data(), grads.data(), state.first_moment.data(),
                      state.second_moment.data(), params.size(), c);
  state.learning_rate *= state.decay;
}

LossAndGrad TdLoss(double prediction, double target) {
  const double error = target - prediction;
  return {error * error, -2.0 * error};
}

LossAndGrad PpoLoss(double ratio, double advantage, double clip) {
  if (!(ratio > 0.0)) throw NumericError("PpoLoss: ratio must be positive");
  const double clipped = std::clamp(ratio, 1.0 - clip, 1.0 + clip);
  const double unclipped_term = ratio * advantage;
  const double clipped_term = clipped * advantage;
  if (unclipped_term <= clipped_term) {
    return {-unclipped_term, -advantage};
  }
  // Clipped branch: its slope in the ratio is zero outside the clip range.
  const bool inside = ratio > 1.0 - clip && ratio < 1.0 + clip;
  return {-clipped_term, inside ? -advantage : 0.0};
}

}  // namespace barocco
