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

#ifndef BAROCCO_Q_MIXER_H_
#define BAROCCO_Q_MIXER_H_

#include <span>
#include <vector>

#include "barocco/common/random.h"
#include "barocco/numerics/dense_network.h"
#include "barocco/numerics/matrix.h"

namespace barocco {

enum class MixerActivation { kElu, kLinear };

// Monotonic two-layer mixer with state-conditioned weights:
//   h = act(q W1(s) + b1(s)),  Q = h . w2(s) + b2(s)
// where W1 = |hyper_w1(s)| and w2 = |hyper_w2(s)|, so dQ/dq_i >= 0.
class MonotonicMixer {
 public:
  MonotonicMixer() = default;
  MonotonicMixer(int num_agents, int state_size, int embed_size,
                 int hyper_hidden, MixerActivation activation);

  int num_agents() const { return num_agents_; }
  int state_size() const { return state_size_; }
  int embed_size() const { return embed_size_; }
  MixerActivation activation() const { return activation_; }

  // hyper_w1, hyper_b1, hyper_w2, hyper_b2.
  std::vector<DenseNetwork*> networks();
  std::vector<const DenseNetwork*> networks() const;
  void Init(Rng& rng);

  struct Cache {
    Matrix contributions;
    Matrix w1_raw, b1, w2_raw;
    Matrix pre;
    std::vector<ForwardCache> hyper;
  };

  // contributions: B x N, states: B x S. Returns B values.
  std::vector<double> Forward(const Matrix& contributions, const Matrix& states,
                              Cache* cache = nullptr) const;

  struct Gradients {
    std::vector<std::vector<double>> hyper;  // per hypernetwork
    Matrix contributions;                    // B x N
  };
  Gradients Backward(const Cache& cache, std::span<const double> output_grad) const;

 private:
  int num_agents_ = 0;
  int state_size_ = 0;
  int embed_size_ = 0;
  MixerActivation activation_ = MixerActivation::kElu;
  DenseNetwork hyper_w1_;
  DenseNetwork hyper_b1_;
  DenseNetwork hyper_w2_;
  DenseNetwork hyper_b2_;
};

}  // namespace barocco

#endif  // BAROCCO_Q_MIXER_H_
