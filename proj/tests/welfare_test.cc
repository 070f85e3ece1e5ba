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

#include <algorithm>
#include <vector>

#include "barocco/common/errors.h"
#include "barocco/common/random.h"
#include "barocco/welfare/welfare.h"
#include "gtest/gtest.h"

namespace barocco {
namespace {

using V = std::vector<double>;

TEST(SocialWelfareTest, SumAndMin) {
  EXPECT_EQ(SocialWelfare(SwChoice::kSum, V{2, 3}), 5.0);
  EXPECT_EQ(SocialWelfare(SwChoice::kMin, V{2, 3}), 2.0);
  EXPECT_EQ(SocialWelfare(SwChoice::kMin, V{-1, -1}), -1.0);
  EXPECT_THROW(SocialWelfare(SwChoice::kSum, V{}), DomainError);
}

TEST(SocialWelfareTest, NamesRoundTrip) {
  for (SwChoice sw : {SwChoice::kSum, SwChoice::kMin}) {
    EXPECT_EQ(ParseSw(SwName(sw)), sw);
  }
  EXPECT_THROW(ParseSw("nash"), ConfigError);
}

TEST(SocialWelfareTest, PermutationInvariantAndSumAdditive) {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    V a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = rng.Uniform(-5, 5);
      b[i] = rng.Uniform(-5, 5);
    }
    V shuffled = a;
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[0], shuffled[2]);
    EXPECT_EQ(SocialWelfare(SwChoice::kMin, a), SocialWelfare(SwChoice::kMin, shuffled));
    EXPECT_NEAR(SocialWelfare(SwChoice::kSum, a), SocialWelfare(SwChoice::kSum, shuffled), 1e-12);
    V sum(4);
    for (int i = 0; i < 4; ++i) sum[i] = a[i] + b[i];
    EXPECT_NEAR(SocialWelfare(SwChoice::kSum, sum),
                SocialWelfare(SwChoice::kSum, a) + SocialWelfare(SwChoice::kSum, b), 1e-12);
    // Concavity of min under mixtures.
    const double t = rng.Uniform();
    V mix(4);
    for (int i = 0; i < 4; ++i) mix[i] = t * a[i] + (1 - t) * b[i];
    EXPECT_GE(SocialWelfare(SwChoice::kMin, mix) + 1e-12,
              t * SocialWelfare(SwChoice::kMin, a) + (1 - t) * SocialWelfare(SwChoice::kMin, b));
  }
}

TEST(CrsRewardTest, Cases) {
  EXPECT_EQ(CrsReward(0, V{2, 4}, 0.0, SwChoice::kSum), 2.0);
  EXPECT_EQ(CrsReward(0, V{2, 4}, 1.0, SwChoice::kSum), 6.0);
  EXPECT_EQ(CrsReward(1, V{2, 4}, 1.0, SwChoice::kSum), 6.0);
  EXPECT_EQ(CrsReward(0, V{2, 4}, 0.5, SwChoice::kSum), 4.0);
  EXPECT_EQ(CrsReward(1, V{2, 4}, 1.0, SwChoice::kMin), 2.0);
  EXPECT_THROW(CrsReward(0, V{2, 4}, 1.5, SwChoice::kSum), ConfigError);
  EXPECT_THROW(CrsReward(0, V{2, 4}, -0.1, SwChoice::kSum), ConfigError);
  EXPECT_THROW(CrsReward(2, V{2, 4}, 0.5, SwChoice::kSum), DomainError);
}

TEST(CombineTest, Cases) {
  EXPECT_EQ(Combine(1.0, 3.0, 0.0), 1.0);
  EXPECT_EQ(Combine(1.0, 3.0, 1.0), 3.0);
  EXPECT_EQ(Combine(1.0, 3.0, 0.5), 2.0);
  EXPECT_THROW(Combine(1.0, 3.0, 2.0), ConfigError);
}

TEST(CombineTest, ExactAtEndpointsForAwkwardValues) {
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const double s = rng.Uniform(-1e6, 1e6), w = rng.Uniform(-1e-6, 1e-6);
    EXPECT_EQ(Combine(s, w, 0.0), s);
    EXPECT_EQ(Combine(s, w, 1.0), w);
  }
}

TEST(CombineTest, BetweenArgumentsAndMonotone) {
  Rng rng(3);
  for (int k = 0; k < 10000; ++k) {
    const double s = rng.Uniform(-10, 10), w = rng.Uniform(-10, 10);
    const double l = rng.Uniform();
    const double c = Combine(s, w, l);
    EXPECT_GE(c, std::min(s, w));
    EXPECT_LE(c, std::max(s, w));
    const double d = rng.Uniform(0, 1);
    EXPECT_GE(Combine(s + d, w, l), c);
    EXPECT_GE(Combine(s, w + d, l), c);
  }
}

TEST(CombineTest, SelfishArgmaxAtLambdaZero) {
  Rng rng(4);
  for (int k = 0; k < 500; ++k) {
    V selfish(5), social(5), combined(5);
    for (int a = 0; a < 5; ++a) {
      selfish[a] = rng.Uniform(-1, 1);
      social[a] = rng.Uniform(-100, 100);
      combined[a] = Combine(selfish[a], social[a], 0.0);
    }
    EXPECT_EQ(std::max_element(combined.begin(), combined.end()) - combined.begin(),
              std::max_element(selfish.begin(), selfish.end()) - selfish.begin());
  }
}

TEST(GiniTest, Cases) {
  EXPECT_EQ(Gini(V{1, 1, 1, 1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(Gini(V{1, 0}), 0.5);
  EXPECT_EQ(Gini(V{0, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(Fairness(V{1, 0}), 0.5);
  EXPECT_THROW(Gini(V{1, -1}), DomainError);
  EXPECT_THROW(Gini(V{}), DomainError);
}

TEST(GiniTest, RangeScaleInvarianceAndZeroIffEqual) {
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    V x(1 + rng.UniformInt(6));
    for (double& v : x) v = rng.Uniform(0, 10);
    const double g = Gini(x);
    EXPECT_GE(g, 0.0);
    EXPECT_LT(g, 1.0);
    V scaled = x;
    const double c = rng.Uniform(0.01, 100);
    for (double& v : scaled) v *= c;
    EXPECT_NEAR(Gini(scaled), g, 1e-12);
    const bool all_equal = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
    EXPECT_EQ(g == 0.0, all_equal);
  }
}

}  // namespace
}  // namespace barocco
