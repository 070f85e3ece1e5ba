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

#include "barocco/numerics/kernels.h"

#include <atomic>
#include <cstdlib>
#include <string>

#include "barocco/common/errors.h"

namespace barocco::kernels {

#if defined(BAROCCO_HAVE_AVX2)
const KernelTable& Avx2KernelTable();
#endif

namespace {

Backend DefaultBackend() {
  if (const char* forced = std::getenv("BAROCCO_KERNELS")) {
    if (std::string(forced) == "scalar") return Backend::kScalar;
  }
  return Avx2Available() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& CurrentBackend() {
  static std::atomic<Backend> backend{DefaultBackend()};
  return backend;
}

}  // namespace

bool Avx2Available() {
#if defined(BAROCCO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported;
#else
  return false;
#endif
}

const KernelTable* Avx2Kernels() {
#if defined(BAROCCO_HAVE_AVX2)
  if (Avx2Available()) return &Avx2KernelTable();
#endif
  return nullptr;
}

Backend ActiveBackend() { return CurrentBackend().load(); }

void SetBackend(Backend backend) {
  if (backend == Backend::kAvx2 && Avx2Kernels() == nullptr) {
    throw DomainError("AVX2 kernels are not available on this machine");
  }
  CurrentBackend().store(backend);
}

std::string_view BackendName(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& Active() {
  if (ActiveBackend() == Backend::kAvx2) {
    if (const KernelTable* table = Avx2Kernels()) return *table;
  }
  return ScalarKernels();
}

}  // namespace barocco::kernels
