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

#ifndef BAROCCO_COMMON_RANDOM_H_
#define BAROCCO_COMMON_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace barocco {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

// Seeded generator with distribution helpers implemented on top of the raw
// 64-bit engine output, so sequences do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0)
      : engine_(MixSeed(seed, stream)) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n).
  int UniformInt(int n);
  bool Bernoulli(double p) { return Uniform() < p; }
  double Normal();
  // Marsaglia-Tsang; shape > 0, unit scale.
  double Gamma(double shape);
  // Index drawn with probability proportional to weights (all >= 0).
  int Categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace barocco

#endif  // BAROCCO_COMMON_RANDOM_H_
