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

#include "barocco/q/mixer.h"

#include <cmath>

#include "barocco/common/errors.h"

namespace barocco {
namespace {

double Activate(MixerActivation a, double x) {
  if (a == MixerActivation::kLinear || x > 0.0) return x;
  return std::expm1(x);
}

double ActivateSlope(MixerActivation a, double x) {
  if (a == MixerActivation::kLinear || x > 0.0) return 1.0;
  return std::exp(x);
}

double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

MonotonicMixer::MonotonicMixer(int num_agents, int state_size, int embed_size,
                               int hyper_hidden, MixerActivation activation)
    : num_agents_(num_agents),
      state_size_(state_size),
      embed_size_(embed_size),
      activation_(activation),
      hyper_w1_({state_size, hyper_hidden, num_agents * embed_size}),
      hyper_b1_({state_size, embed_size}),
      hyper_w2_({state_size, hyper_hidden, embed_size}),
      hyper_b2_({state_size, hyper_hidden, 1}) {
  if (num_agents < 1 || state_size < 1 || embed_size < 1 || hyper_hidden < 1) {
    throw ConfigError("MonotonicMixer: sizes must be positive");
  }
}

std::vector<DenseNetwork*> MonotonicMixer::networks() {
  return {&hyper_w1_, &hyper_b1_, &hyper_w2_, &hyper_b2_};
}

std::vector<const DenseNetwork*> MonotonicMixer::networks() const {
  return {&hyper_w1_, &hyper_b1_, &hyper_w2_, &hyper_b2_};
}

void MonotonicMixer::Init(Rng& rng) {
  for (DenseNetwork* net : networks()) net->InitUniformFanIn(rng);
}

std::vector<double> MonotonicMixer::Forward(const Matrix& contributions,
                                            const Matrix& states,
                                            Cache* cache) const {
  if (static_cast<int>(contributions.cols()) != num_agents_) {
    throw ShapeError("MonotonicMixer: expected one contribution per agent");
  }
  if (contributions.rows() != states.rows()) {
    throw ShapeError("MonotonicMixer: contribution and state batches differ");
  }
  const std::size_t batch = states.rows();
  std::vector<ForwardCache> hyper(4);
  Matrix w1_raw = hyper_w1_.Forward(states, cache ? &hyper[0] : nullptr);
  Matrix b1 = hyper_b1_.Forward(states, cache ? &hyper[1] : nullptr);
  Matrix w2_raw = hyper_w2_.Forward(states, cache ? &hyper[2] : nullptr);
  Matrix b2 = hyper_b2_.Forward(states, cache ? &hyper[3] : nullptr);
  Matrix pre(batch, embed_size_);
  std::vector<double> out(batch);
  for (std::size_t b = 0; b < batch; ++b) {
    double q = b2(b, 0);
    for (int e = 0; e < embed_size_; ++e) {
      double z = b1(b, e);
      for (int n = 0; n < num_agents_; ++n) {
        z += contributions(b, n) * std::abs(w1_raw(b, n * embed_size_ + e));
      }
      pre(b, e) = z;
      q += Activate(activation_, z) * std::abs(w2_raw(b, e));
    }
    out[b] = q;
  }
  if (cache != nullptr) {
    cache->contributions = contributions;
    cache->w1_raw = std::move(w1_raw);
    cache->b1 = std::move(b1);
    cache->w2_raw = std::move(w2_raw);
    cache->pre = std::move(pre);
    cache->hyper = std::move(hyper);
  }
  return out;
}

MonotonicMixer::Gradients MonotonicMixer::Backward(
    const Cache& cache, std::span<const double> output_grad) const {
  const std::size_t batch = cache.pre.rows();
  if (output_grad.size() != batch) {
    throw ShapeError("MonotonicMixer: gradient batch mismatch");
  }
  Matrix d_w1(batch, static_cast<std::size_t>(num_agents_) * embed_size_);
  Matrix d_b1(batch, embed_size_);
  Matrix d_w2(batch, embed_size_);
  Matrix d_b2(batch, 1);
  Gradients grads;
  grads.contributions = Matrix(batch, num_agents_);
  for (std::size_t b = 0; b < batch; ++b) {
    const double g = output_grad[b];
    d_b2(b, 0) = g;
    for (int e = 0; e < embed_size_; ++e) {
      const double z = cache.pre(b, e);
      const double w2 = cache.w2_raw(b, e);
      d_w2(b, e) = g * Activate(activation_, z) * Sign(w2);
      const double dz = g * std::abs(w2) * ActivateSlope(activation_, z);
      d_b1(b, e) = dz;
      for (int n = 0; n < num_agents_; ++n) {
        const double w1 = cache.w1_raw(b, n * embed_size_ + e);
        d_w1(b, n * embed_size_ + e) = dz * cache.contributions(b, n) * Sign(w1);
        grads.contributions(b, n) += dz * std::abs(w1);
      }
    }
  }
  const std::vector<const DenseNetwork*> nets = networks();
  const Matrix* output_grads[4] = {&d_w1, &d_b1, &d_w2, &d_b2};
  for (int k = 0; k < 4; ++k) {
    grads.hyper.push_back(
        nets[k]->Backward(cache.hyper[k], *output_grads[k]).parameters);
  }
  return grads;
}

}  // namespace barocco
