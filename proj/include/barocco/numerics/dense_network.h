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

#ifndef BAROCCO_NUMERICS_DENSE_NETWORK_H_
#define BAROCCO_NUMERICS_DENSE_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "barocco/common/random.h"
#include "barocco/numerics/matrix.h"

namespace barocco {

enum class OutputActivation { kIdentity, kSoftmax };

class DenseNetwork;

// Activations recorded by DenseNetwork::Forward for a later Backward call.
// activations[0] is the input batch, activations[l + 1] the post-activation
// output of layer l.
struct ForwardCache {
  std::vector<Matrix> activations;
  const DenseNetwork* owner = nullptr;
  std::uint64_t version = 0;
};

struct NetworkGradients {
  // Same layout as DenseNetwork::parameters().
  std::vector<double> parameters;
  // dL/d(input), one row per sample.
  Matrix input;
};

// Fully connected network with rectifier hidden units and an identity or
// softmax output. Parameters live in one flat array: for each layer the
// row-major weight matrix (out x in) followed by the bias vector.
class DenseNetwork {
 public:
  DenseNetwork() = default;
  explicit DenseNetwork(std::vector<int> layer_widths,
                        OutputActivation output = OutputActivation::kIdentity);

  const std::vector<int>& layer_widths() const { return widths_; }
  int input_size() const { return widths_.front(); }
  int output_size() const { return widths_.back(); }
  int num_layers() const { return static_cast<int>(widths_.size()) - 1; }
  OutputActivation output_activation() const { return output_; }

  std::size_t num_parameters() const { return params_.size(); }
  std::span<const double> parameters() const { return params_; }
  // Invalidates outstanding forward caches.
  std::span<double> mutable_parameters();
  void SetParameters(std::span<const double> values);

  std::size_t weight_offset(int layer) const { return offsets_[layer]; }
  std::size_t bias_offset(int layer) const {
    return offsets_[layer] +
           static_cast<std::size_t>(widths_[layer + 1]) * widths_[layer];
  }
  double weight(int layer, int out, int in) const {
    return params_[weight_offset(layer) +
                   static_cast<std::size_t>(out) * widths_[layer] + in];
  }
  double bias(int layer, int out) const {
    return params_[bias_offset(layer) + out];
  }

  // Throws ShapeError when input.cols() != input_size().
  Matrix Forward(const Matrix& input, ForwardCache* cache = nullptr) const;
  std::vector<double> Evaluate(std::span<const double> input) const;

  // Sums per-sample gradients over the batch; callers fold the 1/B of a
  // mean loss into output_grad. Throws UsageError for a stale cache.
  NetworkGradients Backward(const ForwardCache& cache,
                            const Matrix& output_grad) const;

  // U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases.
  void InitUniformFanIn(Rng& rng);
  // Orthogonal weights scaled by the gain, zero biases.
  void InitOrthogonal(Rng& rng, double hidden_gain, double output_gain);

  std::uint64_t version() const { return version_; }

 private:
  void Touch();

  std::vector<int> widths_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
  OutputActivation output_ = OutputActivation::kIdentity;
  std::uint64_t version_ = 0;
};

// Row-wise softmax of logits, max-shifted.
void SoftmaxInPlace(std::span<double> logits);

}  // namespace barocco

#endif  // BAROCCO_NUMERICS_DENSE_NETWORK_H_
