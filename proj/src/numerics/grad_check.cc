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

#include "barocco/numerics/grad_check.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace barocco {

GradCheckReport GradCheck(const DenseNetwork& net, const Matrix& input,
                          const OutputLossFn& loss,
                          const GradCheckOptions& options) {
  ForwardCache cache;
  const Matrix output = net.Forward(input, &cache);
  const OutputLoss base = loss(output);
  std::vector<double> analytic = net.Backward(cache, base.grad).parameters;
  if (options.perturb_analytic) options.perturb_analytic(analytic);

  DenseNetwork probe = net;
  std::vector<double> params(net.parameters().begin(), net.parameters().end());
  auto central = [&](std::size_t i, double step) {
    const double original = params[i];
    params[i] = original + step;
    probe.SetParameters(params);
    const double plus = loss(probe.Forward(input)).value;
    params[i] = original - step;
    probe.SetParameters(params);
    const double minus = loss(probe.Forward(input)).value;
    params[i] = original;
    return (plus - minus) / (2.0 * step);
  };
  auto relative = [&](double a, double n) {
    return std::abs(a - n) / std::max({std::abs(a), std::abs(n), options.floor});
  };
  GradCheckReport report;
  for (std::size_t i = 0; i < params.size(); ++i) {
    double error = relative(analytic[i], central(i, options.step));
    if (error > options.tolerance && options.kink_step > 0.0) {
      error = std::min(error, relative(analytic[i], central(i, options.kink_step)));
    }
    if (error > report.max_relative_error) {
      report.max_relative_error = error;
      report.worst_parameter = i;
    }
  }
  report.passed = report.max_relative_error < options.tolerance;
  return report;
}

}  // namespace barocco
