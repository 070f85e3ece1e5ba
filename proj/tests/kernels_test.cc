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

#include <cstdlib>
#include <vector>

#include "barocco/common/errors.h"
#include "barocco/common/random.h"
#include "barocco/numerics/kernels.h"
#include "gtest/gtest.h"

namespace barocco::kernels {
namespace {

std::vector<double> RandomVector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform(-2.0, 2.0);
  return v;
}

class KernelEquivalenceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (Avx2Kernels() == nullptr) GTEST_SKIP() << "AVX2+FMA not available";
  }
  const KernelTable& scalar_ = ScalarKernels();
};

TEST_F(KernelEquivalenceTest, DotAgreesAcrossLengths) {
  Rng rng(1);
  for (std::size_t n : {0, 1, 3, 4, 7, 8, 15, 16, 63, 64, 65, 1000}) {
    const auto a = RandomVector(rng, n), b = RandomVector(rng, n);
    const double ref = scalar_.dot(a.data(), b.data(), n);
    const double simd = Avx2Kernels()->dot(a.data(), b.data(), n);
    EXPECT_NEAR(simd, ref, 1e-12 * (1.0 + static_cast<double>(n))) << "n=" << n;
  }
}

TEST_F(KernelEquivalenceTest, AxpyAgreesAcrossLengths) {
  Rng rng(2);
  for (std::size_t n : {0, 1, 5, 8, 33, 257}) {
    const auto x = RandomVector(rng, n);
    auto y1 = RandomVector(rng, n);
    auto y2 = y1;
    scalar_.axpy(0.37, x.data(), y1.data(), n);
    Avx2Kernels()->axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-14);
  }
}

TEST_F(KernelEquivalenceTest, AdamAgreesAcrossLengths) {
  Rng rng(3);
  const AdamCoefficients c{0.9, 0.999, 1e-8, 1e-3 / (1 - 0.9), 1.0 / (1 - 0.999)};
  for (std::size_t n : {1, 4, 9, 100}) {
    auto p1 = RandomVector(rng, n), m1 = RandomVector(rng, n), v1 = RandomVector(rng, n);
    for (double& v : v1) v = std::abs(v);
    auto p2 = p1, m2 = m1, v2 = v1;
    const auto g = RandomVector(rng, n);
    scalar_.adam(p1.data(), g.data(), m1.data(), v1.data(), n, c);
    Avx2Kernels()->adam(p2.data(), g.data(), m2.data(), v2.data(), n, c);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(p1[i], p2[i], 1e-14);
      EXPECT_NEAR(m1[i], m2[i], 1e-15);
      EXPECT_NEAR(v1[i], v2[i], 1e-15);
    }
  }
}

TEST(KernelBackendTest, ScalarBackendCanBeForced) {
  const Backend before = ActiveBackend();
  SetBackend(Backend::kScalar);
  EXPECT_EQ(ActiveBackend(), Backend::kScalar);
  EXPECT_EQ(BackendName(Backend::kScalar), "scalar");
  const double a[3] = {1, 2, 3};
  EXPECT_EQ(Dot(a, a, 3), 14.0);
  if (Avx2Available()) {
    SetBackend(Backend::kAvx2);
    EXPECT_EQ(Dot(a, a, 3), 14.0);
  } else {
    EXPECT_THROW(SetBackend(Backend::kAvx2), DomainError);
  }
  SetBackend(before);
}

}  // namespace
}  // namespace barocco::kernels
