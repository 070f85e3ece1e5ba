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

// Compiled with -mavx2 -mfma. Nothing in this file may run before the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "barocco/numerics/kernels.h"

namespace barocco::kernels {
namespace {

double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

double DotAvx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
  }
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void AxpyAvx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d scale = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d updated = _mm256_fmadd_pd(scale, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, updated);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void AdamAvx2(double* params, const double* grads, double* m, double* v,
              std::size_t n, const AdamCoefficients& c) {
  const __m256d beta1 = _mm256_set1_pd(c.beta1);
  const __m256d beta2 = _mm256_set1_pd(c.beta2);
  const __m256d one_minus_beta1 = _mm256_set1_pd(1.0 - c.beta1);
  const __m256d one_minus_beta2 = _mm256_set1_pd(1.0 - c.beta2);
  const __m256d epsilon = _mm256_set1_pd(c.epsilon);
  const __m256d step = _mm256_set1_pd(c.step_size);
  const __m256d correction = _mm256_set1_pd(c.second_correction);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d g = _mm256_loadu_pd(grads + i);
    __m256d mi = _mm256_mul_pd(beta1, _mm256_loadu_pd(m + i));
    mi = _mm256_add_pd(mi, _mm256_mul_pd(one_minus_beta1, g));
    __m256d vi = _mm256_mul_pd(beta2, _mm256_loadu_pd(v + i));
    vi = _mm256_add_pd(vi, _mm256_mul_pd(_mm256_mul_pd(one_minus_beta2, g), g));
    _mm256_storeu_pd(m + i, mi);
    _mm256_storeu_pd(v + i, vi);
    const __m256d denom = _mm256_add_pd(
        _mm256_sqrt_pd(_mm256_mul_pd(vi, correction)), epsilon);
    const __m256d delta = _mm256_div_pd(_mm256_mul_pd(step, mi), denom);
    _mm256_storeu_pd(params + i,
                     _mm256_sub_pd(_mm256_loadu_pd(params + i), delta));
  }
  for (; i < n; ++i) {
    const double g = grads[i];
    m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g;
    v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g * g;
    const double v_hat = v[i] * c.second_correction;
    params[i] -= c.step_size * m[i] / (std::sqrt(v_hat) + c.epsilon);
  }
}

}  // namespace

const KernelTable& Avx2KernelTable() {
  static const KernelTable table{&DotAvx2, &AxpyAvx2, &AdamAvx2};
  return table;
}

}  // namespace barocco::kernels
