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

#include "barocco/numerics/dense_network.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "barocco/common/errors.h"
#include "barocco/numerics/kernels.h"

namespace barocco {
namespace {

std::uint64_t NextVersion() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

// Gram-Schmidt orthonormalization of a rows x cols Gaussian matrix; the
// result has orthonormal rows if rows <= cols, orthonormal columns otherwise.
std::vector<double> OrthogonalMatrix(Rng& rng, int rows, int cols) {
  const bool transpose = rows < cols;
  const int n = transpose ? cols : rows;  // long side
  const int k = transpose ? rows : cols;  // short side
  // Columns of an n x k matrix stored column-major.
  std::vector<double> q(static_cast<std::size_t>(n) * k);
  for (double& x : q) x = rng.Normal();
  for (int j = 0; j < k; ++j) {
    double* col = q.data() + static_cast<std::size_t>(j) * n;
    for (int pass = 0; pass < 2; ++pass) {
      for (int p = 0; p < j; ++p) {
        const double* prev = q.data() + static_cast<std::size_t>(p) * n;
        double proj = 0.0;
        for (int i = 0; i < n; ++i) proj += prev[i] * col[i];
        for (int i = 0; i < n; ++i) col[i] -= proj * prev[i];
      }
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += col[i] * col[i];
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) col[i] /= norm;
  }
  std::vector<double> out(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      // Non-transposed: out(r, c) = Q(r, c); transposed: out(r, c) = Q(c, r).
      out[static_cast<std::size_t>(r) * cols + c] =
          transpose ? q[static_cast<std::size_t>(r) * n + c]
                    : q[static_cast<std::size_t>(c) * n + r];
    }
  }
  return out;
}

}  // namespace

void SoftmaxInPlace(std::span<double> logits) {
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& x : logits) {
    x = std::exp(x - max_logit);
    total += x;
  }
  for (double& x : logits) x /= total;
}

DenseNetwork::DenseNetwork(std::vector<int> layer_widths,
                           OutputActivation output)
    : widths_(std::move(layer_widths)), output_(output) {
  if (widths_.size() < 2) {
    throw ShapeError("DenseNetwork needs at least input and output widths");
  }
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
    if (widths_[l] <= 0 || widths_[l + 1] <= 0) {
      throw ShapeError("DenseNetwork layer widths must be positive");
    }
    offsets_.push_back(total);
    total += static_cast<std::size_t>(widths_[l + 1]) * (widths_[l] + 1);
  }
  params_.assign(total, 0.0);
  Touch();
}

void DenseNetwork::Touch() { version_ = NextVersion(); }

std::span<double> DenseNetwork::mutable_parameters() {
  Touch();
  return params_;
}

void DenseNetwork::SetParameters(std::span<const double> values) {
  if (values.size() != params_.size()) {
    throw ShapeError("SetParameters: expected " +
                     std::to_string(params_.size()) + " values, got " +
                     std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), params_.begin());
  Touch();
}

Matrix DenseNetwork::Forward(const Matrix& input, ForwardCache* cache) const {
  if (static_cast<int>(input.cols()) != input_size()) {
    throw ShapeError("Forward: input width " + std::to_string(input.cols()) +
                     " does not match network input " +
                     std::to_string(input_size()));
  }
  const std::size_t batch = input.rows();
  if (cache != nullptr) {
    cache->activations.clear();
    cache->activations.reserve(widths_.size());
    cache->activations.push_back(input);
    cache->owner = this;
    cache->version = version_;
  }
  const kernels::KernelTable& k = kernels::Active();
  Matrix current = input;
  for (int l = 0; l < num_layers(); ++l) {
    const int in = widths_[l];
    const int out = widths_[l + 1];
    const double* w = params_.data() + weight_offset(l);
    const double* b = params_.data() + bias_offset(l);
    const bool last = l + 1 == num_layers();
    Matrix next(batch, out);
    for (std::size_t s = 0; s < batch; ++s) {
      const double* x = current.row(s).data();
      std::span<double> y = next.row(s);
      for (int j = 0; j < out; ++j) {
        y[j] = k.dot(w + static_cast<std::size_t>(j) * in, x, in) + b[j];
      }
      if (!last) {
        for (double& v : y) v = v > 0.0 ? v : 0.0;
      } else if (output_ == OutputActivation::kSoftmax) {
        SoftmaxInPlace(y);
      }
    }
    if (cache != nullptr) cache->activations.push_back(next);
    current = std::move(next);
  }
  return current;
}

std::vector<double> DenseNetwork::Evaluate(std::span<const double> input) const {
  const Matrix out = Forward(Matrix::FromRow(input));
  return {out.data().begin(), out.data().end()};
}

NetworkGradients DenseNetwork::Backward(const ForwardCache& cache,
                                        const Matrix& output_grad) const {
  if (cache.owner != this || cache.version != version_ ||
      cache.activations.size() != widths_.size()) {
    throw UsageError("Backward: forward cache is stale or from another network");
  }
  const std::size_t batch = cache.activations.front().rows();
  if (output_grad.rows() != batch ||
      static_cast<int>(output_grad.cols()) != output_size()) {
    throw ShapeError("Backward: output gradient shape mismatch");
  }
  const kernels::KernelTable& k = kernels::Active();
  NetworkGradients grads;
  grads.parameters.assign(params_.size(), 0.0);
  Matrix delta = output_grad;
  for (int l = num_layers() - 1; l >= 0; --l) {
    const int in = widths_[l];
    const int out = widths_[l + 1];
    const Matrix& x = cache.activations[l];
    const Matrix& y = cache.activations[l + 1];
    // delta <- dL/d(pre-activation) of layer l.
    for (std::size_t s = 0; s < batch; ++s) {
      std::span<double> d = delta.row(s);
      std::span<const double> a = y.row(s);
      if (l + 1 < num_layers()) {
        for (int j = 0; j < out; ++j) {
          if (a[j] <= 0.0) d[j] = 0.0;
        }
      } else if (output_ == OutputActivation::kSoftmax) {
        double dot = 0.0;
        for (int j = 0; j < out; ++j) dot += d[j] * a[j];
        for (int j = 0; j < out; ++j) d[j] = a[j] * (d[j] - dot);
      }
    }
    const double* w = params_.data() + weight_offset(l);
    double* gw = grads.parameters.data() + weight_offset(l);
    double* gb = grads.parameters.data() + bias_offset(l);
    Matrix previous(batch, in);
    for (std::size_t s = 0; s < batch; ++s) {
      std::span<const double> d = delta.row(s);
      const double* xs = x.row(s).data();
      double* prev = previous.row(s).data();
      for (int j = 0; j < out; ++j) {
        if (d[j] == 0.0) continue;
        k.axpy(d[j], xs, gw + static_cast<std::size_t>(j) * in, in);
        gb[j] += d[j];
        k.axpy(d[j], w + static_cast<std::size_t>(j) * in, prev, in);
      }
    }
    delta = std::move(previous);
  }
  grads.input = std::move(delta);
  return grads;
}

void DenseNetwork::InitUniformFanIn(Rng& rng) {
  for (int l = 0; l < num_layers(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(widths_[l]));
    const std::size_t begin = weight_offset(l);
    const std::size_t end = bias_offset(l) + widths_[l + 1];
    for (std::size_t i = begin; i < end; ++i) {
      params_[i] = rng.Uniform(-bound, bound);
    }
  }
  Touch();
}

void DenseNetwork::InitOrthogonal(Rng& rng, double hidden_gain,
                                  double output_gain) {
  for (int l = 0; l < num_layers(); ++l) {
    const double gain = l + 1 == num_layers() ? output_gain : hidden_gain;
    const std::vector<double> q = OrthogonalMatrix(rng, widths_[l + 1], widths_[l]);
    double* w = params_.data() + weight_offset(l);
    for (std::size_t i = 0; i < q.size(); ++i) w[i] = gain * q[i];
    double* b = params_.data() + bias_offset(l);
    std::fill(b, b + widths_[l + 1], 0.0);
  }
  Touch();
}

}  // namespace barocco
