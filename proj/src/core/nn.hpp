// Copyright (c) 2026 The SyncGAN Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rng.hpp"
#include "tensor.hpp"

namespace syncgan {

enum class Activation { kLeakyRelu, kTanh, kSigmoid, kIdentity };

inline constexpr double kLeakySlope = 0.2;

const char* activation_name(Activation act);
Activation parse_activation(const std::string& name);

struct DenseLayer {
  Tensor weight;  // [in_dim x out_dim]
  Tensor bias;    // [out_dim]
  Activation activation = Activation::kIdentity;

  std::size_t in_dim() const { return weight.dim(0); }
  std::size_t out_dim() const { return weight.dim(1); }
  Tensor forward(const Tensor& x) const;
};

/// Weights drawn from Normal(0, 2 / (in_dim + out_dim)), zero bias.
DenseLayer init_dense(std::size_t in_dim, std::size_t out_dim, Activation activation, Rng& rng);

class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(std::vector<DenseLayer> layers);

  /// Builds dims[0] -> dims[1] -> ... -> dims.back(); hidden layers use
  /// `hidden`, the final layer uses `output`.
  static Mlp create(const std::vector<std::size_t>& dims, Activation hidden, Activation output, Rng& rng);

  Tensor forward(const Tensor& x) const;

  std::size_t in_dim() const;
  std::size_t out_dim() const;
  bool empty() const { return layers_.empty(); }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  std::vector<Tensor> parameters() const;
  std::vector<std::pair<std::string, Tensor>> named_parameters(const std::string& prefix) const;
  void zero_grad();

 private:
  std::vector<DenseLayer> layers_;
};

}  // namespace syncgan
