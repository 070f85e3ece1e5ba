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

#ifndef BAROCCO_NUMERICS_KERNELS_H_
#define BAROCCO_NUMERICS_KERNELS_H_

#include <cstddef>
#include <string_view>

// Inner loops of the dense engine. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant. The active backend is
// picked once from CPUID and can be overridden (BAROCCO_KERNELS=scalar or
// SetBackend) so equivalence tests can run both paths.
namespace barocco::kernels {

enum class Backend { kScalar, kAvx2 };

struct AdamCoefficients {
  double beta1;
  double beta2;
  double epsilon;
  double step_size;          // learning rate / (1 - beta1^t)
  double second_correction;  // 1 / (1 - beta2^t)
};

// Signatures shared by every backend.
using DotFn = double (*)(const double* a, const double* b, std::size_t n);
using AxpyFn = void (*)(double alpha, const double* x, double* y,
                        std::size_t n);
using AdamFn = void (*)(double* params, const double* grads, double* m,
                        double* v, std::size_t n, const AdamCoefficients& c);

struct KernelTable {
  DotFn dot;
  AxpyFn axpy;
  AdamFn adam;
};

const KernelTable& ScalarKernels();
// Nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* Avx2Kernels();

bool Avx2Available();
Backend ActiveBackend();
// Throws DomainError when the requested backend is unavailable.
void SetBackend(Backend backend);
std::string_view BackendName(Backend backend);

const KernelTable& Active();

inline double Dot(const double* a, const double* b, std::size_t n) {
  return Active().dot(a, b, n);
}
// y += alpha * x
inline void Axpy(double alpha, const double* x, double* y, std::size_t n) {
  Active().axpy(alpha, x, y, n);
}
inline void AdamUpdate(double* params, const double* grads, double* m,
                       double* v, std::size_t n, const AdamCoefficients& c) {
  Active().adam(params, grads, m, v, n, c);
}

}  // namespace barocco::kernels

#endif  // BAROCCO_NUMERICS_KERNELS_H_
