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

#include "barocco/harness/verify.h"

#include <cmath>
#include <cstdio>

#include "barocco/ac/ac_learner.h"
#include "barocco/common/random.h"
#include "barocco/envs/toy_games.h"
#include "barocco/numerics/dense_network.h"
#include "barocco/numerics/grad_check.h"
#include "barocco/numerics/optim.h"
#include "barocco/q/mixer.h"
#include "barocco/q/q_learner.h"
#include "barocco/tabular/tabular_game.h"

namespace barocco {
namespace {

constexpr std::uint64_t kVerifySeed = 20260;

std::string Format(const char* fmt, double x) {
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer), fmt, x);
  return buffer;
}

CheckResult AllocatorTable() {
  double worst = 0.0;
  for (double gamma : {0.5, 0.9, 0.99}) {
    for (const AllocatorOutcome& o : EnumerateAllocatorOutcomes(gamma)) {
      const bool same = o.recipients[0] == o.recipients[1];
      const double sum = same ? 1.0 + 2.0 * gamma : 1.0 + gamma;
      const double long_min = same ? 0.0 : gamma;
      worst = std::max({worst, std::abs(o.short_sum - sum),
                        std::abs(o.long_sum - sum), std::abs(o.short_min),
                        std::abs(o.long_min - long_min)});
    }
  }
  return {"allocator table", worst < 1e-12, Format("max error %.3g", worst)};
}

CheckResult TerminationTable() {
  const double gamma = 0.95;
  double worst = 0.0;
  for (int t2 : {5, 7, 20}) {
    const TerminationValues sim = SimulateTerminationToy(3, t2, gamma);
    const TerminationValues closed = TerminationToyValues(3, t2, gamma);
    for (int i = 0; i < 2; ++i) {
      worst = std::max({worst, std::abs(sim.selfish[i] - closed.selfish[i]),
                        std::abs(sim.short_term[i] - closed.short_term[i]),
                        std::abs(sim.long_term[i] - closed.long_term[i])});
    }
    worst = std::max(worst, std::abs(sim.short_term[0] + std::pow(gamma, 3)));
  }
  return {"termination table", worst < 1e-12, Format("max error %.3g", worst)};
}

CheckResult Factorization() {
  Rng rng(kVerifySeed, 1);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const TabularGame game = RandomTabularGame(rng, 1 + k % 4, 2, 2, 0.9);
    const TabularPolicies pi = RandomPolicies(game, rng);
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      worst = std::max(worst, FactorizationCheck(game, pi, lambda));
    }
  }
  return {"value factorization", worst < 1e-10, Format("max deviation %.3g", worst)};
}

CheckResult SumCommutativity() {
  Rng rng(kVerifySeed, 2);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const TabularGame game = RandomTabularGame(rng, 1 + k % 4, 2, 2, 0.9);
    const PolicyValues v = ExactPolicyEval(game, RandomPolicies(game, rng), SwChoice::kSum);
    for (int s = 0; s < game.num_states; ++s) {
      worst = std::max(worst, std::abs(v.short_term[s] - v.long_term[s]));
    }
  }
  // Under min the alternating allocations separate the two definitions.
  const TabularGame allocator = AllocatorGame(0.9);
  const PolicyValues alt = ExactPolicyEval(allocator, AllocatorPolicies(0, 1), SwChoice::kMin);
  const bool diverges = std::abs(alt.short_term[0]) < 1e-12 &&
                        std::abs(alt.long_term[0] - 0.9) < 1e-12;
  return {"sum commutativity", worst < 1e-10 && diverges,
          Format("max sum gap %.3g", worst) + (diverges ? "" : "; min case did not diverge")};
}

// Expected short and long social targets under a frozen policy with exact
// values: E[SW(r) + g V^SW(s')] against E[SW_target(r_i + g V_i(s'))].
CheckResult TargetCommutativity(const VerifyOptions& options) {
  const auto long_target = options.long_target ? options.long_target
                                               : std::function(LongSocialTarget);
  Rng rng(kVerifySeed, 3);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const TabularGame game = RandomTabularGame(rng, 3, 2, 2, 0.9);
    const TabularPolicies pi = RandomPolicies(game, rng);
    const PolicyValues v = ExactPolicyEval(game, pi, SwChoice::kSum);
    for (int s = 0; s < game.num_states; ++s) {
      double short_mean = 0.0, long_mean = 0.0;
      for (int j = 0; j < game.num_joint_actions(); ++j) {
        const std::vector<int> a = game.JointActions(j);
        const double p = pi[0][s][a[0]] * pi[1][s][a[1]];
        for (int t = 0; t < game.num_states; ++t) {
          const double pt = p * game.transitions[s][j][t];
          const auto& r = game.rewards[s][j];
          short_mean += pt * ShortSocialTarget(r, SwChoice::kSum, game.gamma,
                                               v.short_term[t], false);
          const double y[2] = {r[0] + game.gamma * v.selfish[0][t],
                               r[1] + game.gamma * v.selfish[1][t]};
          long_mean += pt * long_target(y, SwChoice::kSum);
        }
      }
      worst = std::max(worst, std::abs(short_mean - long_mean));
    }
  }
  return {"short/long target commutativity", worst < 1e-10,
          Format("max gap %.3g", worst)};
}

CheckResult MixerMonotonicity() {
  Rng rng(kVerifySeed, 4);
  MonotonicMixer mixer(3, 5, 8, 16, MixerActivation::kElu);
  mixer.Init(rng);
  double worst = 0.0;
  const double h = 1e-6;
  for (int probe = 0; probe < 1000; ++probe) {
    Matrix q(1, 3), s(1, 5);
    for (double& x : q.data()) x = rng.Uniform(-5.0, 5.0);
    for (double& x : s.data()) x = rng.Uniform(-2.0, 2.0);
    const double base = mixer.Forward(q, s)[0];
    for (int i = 0; i < 3; ++i) {
      Matrix up = q;
      up(0, i) += h;
      const double slope = (mixer.Forward(up, s)[0] - base) / h;
      worst = std::min(worst, slope);
    }
  }
  return {"mixer monotonicity", worst >= -1e-9, Format("min slope %.3g", worst)};
}

CheckResult CounterfactualBaseline() {
  Rng rng(kVerifySeed, 5);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int actions = 2 + rng.UniformInt(7);
    std::vector<double> q(actions), logits(actions);
    for (double& x : q) x = rng.Uniform(-10.0, 10.0);
    for (double& x : logits) x = rng.Uniform(-3.0, 3.0);
    SoftmaxInPlace(logits);
    double mean = 0.0;
    for (int a = 0; a < actions; ++a) mean += logits[a] * ComaAdvantage(q, logits, a);
    worst = std::max(worst, std::abs(mean));
  }
  return {"counterfactual baseline zero mean", worst < 1e-9,
          Format("max |E[A]| %.3g", worst)};
}

OutputLoss WeightedSquares(const Matrix& out) {
  OutputLoss loss{0.0, Matrix(out.rows(), out.cols())};
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      const double w = 1.0 + 0.1 * static_cast<double>(c);
      loss.value += 0.5 * w * out(r, c) * out(r, c);
      loss.grad(r, c) = w * out(r, c);
    }
  }
  return loss;
}

CheckResult GradientChecks() {
  Rng rng(kVerifySeed, 6);
  double worst = 0.0;
  bool mutation_caught = true;
  for (int k = 0; k < 20; ++k) {
    std::vector<int> widths = {1 + rng.UniformInt(6)};
    const int layers = 1 + k % 3;
    for (int l = 0; l < layers; ++l) widths.push_back(1 + rng.UniformInt(64));
    widths.push_back(1 + rng.UniformInt(5));
    DenseNetwork net(widths, k % 4 == 3 ? OutputActivation::kSoftmax
                                        : OutputActivation::kIdentity);
    net.InitUniformFanIn(rng);
    Matrix x(3, widths.front());
    for (double& v : x.data()) v = rng.Uniform(-1.0, 1.0);
    worst = std::max(worst, GradCheck(net, x, WeightedSquares).max_relative_error);
    GradCheckOptions broken;
    broken.perturb_analytic = [](std::span<double> g) { g[0] += 0.1; };
    mutation_caught = mutation_caught && !GradCheck(net, x, WeightedSquares, broken).passed;
  }
  return {"gradient checks", worst < 1e-4 && mutation_caught,
          Format("max relative error %.3g", worst) +
              (mutation_caught ? "" : "; injected error not detected")};
}

CheckResult PpoCases() {
  const LossAndGrad a = PpoLoss(1.0, 2.0, 0.2);
  const LossAndGrad b = PpoLoss(2.0, 1.0, 0.2);
  const LossAndGrad c = PpoLoss(0.5, -1.0, 0.2);
  const bool ok = a.loss == -2.0 && std::abs(b.loss + 1.2) < 1e-15 && b.grad == 0.0 &&
                  std::abs(c.loss - 0.8) < 1e-15 && c.grad == 0.0;
  return {"ppo cases", ok, ""};
}

}  // namespace

std::vector<CheckResult> RunVerification(const VerifyOptions& options) {
  return {AllocatorTable(),     TerminationTable(),   Factorization(),
          SumCommutativity(),   TargetCommutativity(options),
          MixerMonotonicity(),  CounterfactualBaseline(), GradientChecks(),
          PpoCases()};
}

}  // namespace barocco
