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

#include <cmath>

#include "barocco/numerics/kernels.h"

namespace barocco::kernels {
namespace {

double DotScalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void AxpyScalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void AdamScalar(double* params, const double* grads, double* m, double* v,
                std::size_t n, const AdamCoefficients& c) {
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g;
    v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g * g;
    const double v_hat = v[i] * c.second_correction;
    params[i] -= c.step_size * m[i] / (std::sqrt(v_hat) + c.epsilon);
  }
}

}  // namespace

const KernelTable& ScalarKernels() {
  static const KernelTable table{&DotScalar, &AxpyScalar, &AdamScalar};
  return table;
}

}  // namespace barocco::kernels
