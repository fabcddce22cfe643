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

#include "nn.hpp"

#include <cmath>

namespace syncgan {

const char* activation_name(Activation act) {
  switch (act) {
    case Activation::kLeakyRelu: return "leaky_relu";
    case Activation::kTanh: return "tanh";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kIdentity: return "identity";
  }
  return "identity";
}

Activation parse_activation(const std::string& name) {
  for (auto a : {Activation::kLeakyRelu, Activation::kTanh, Activation::kSigmoid, Activation::kIdentity})
    if (name == activation_name(a)) return a;
  throw std::invalid_argument("unknown activation '" + name + "'");
}

Tensor DenseLayer::forward(const Tensor& x) const {
  if (x.rank() != 2 || x.dim(1) != in_dim())
    throw TensorError("dense: input " + shape_str(x.shape()) + " does not match layer input dim " +
                      std::to_string(in_dim()));
  Tensor y = add(matmul(x, weight), bias);
  switch (activation) {
    case Activation::kLeakyRelu: return leaky_relu(y, kLeakySlope);
    case Activation::kTanh: return tanh(y);
    case Activation::kSigmoid: return sigmoid(y);
    case Activation::kIdentity: return y;
  }
  return y;
}

DenseLayer init_dense(std::size_t in_dim, std::size_t out_dim, Activation activation, Rng& rng) {
  if (in_dim == 0 || out_dim == 0)
    throw std::invalid_argument("init_dense: dimensions must be positive, got " + std::to_string(in_dim) + "x" +
                                std::to_string(out_dim));
  const double stddev = std::sqrt(2.0 / static_cast<double>(in_dim + out_dim));
  std::vector<double> w(in_dim * out_dim);
  for (auto& v : w) v = rng.normal(0.0, stddev);
  return DenseLayer{Tensor({in_dim, out_dim}, std::move(w), true), Tensor::zeros({out_dim}, true), activation};
}

Mlp::Mlp(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  for (std::size_t i = 1; i < layers_.size(); ++i)
    if (layers_[i].in_dim() != layers_[i - 1].out_dim())
      throw std::invalid_argument("mlp: layer " + std::to_string(i) + " expects " +
                                  std::to_string(layers_[i].in_dim()) + " inputs but previous layer emits " +
                                  std::to_string(layers_[i - 1].out_dim()));
}

Mlp Mlp::create(const std::vector<std::size_t>& dims, Activation hidden, Activation output, Rng& rng) {
  if (dims.size() < 2) throw std::invalid_argument("mlp: need at least input and output dims");
  std::vector<DenseLayer> layers;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i)
    layers.push_back(init_dense(dims[i], dims[i + 1], i + 2 == dims.size() ? output : hidden, rng));
  return Mlp(std::move(layers));
}

Tensor Mlp::forward(const Tensor& x) const {
  if (layers_.empty()) throw std::logic_error("mlp: forward on empty network");
  Tensor h = x;
  for (const auto& layer : layers_) h = layer.forward(h);
  return h;
}

std::size_t Mlp::in_dim() const { return layers_.empty() ? 0 : layers_.front().in_dim(); }
std::size_t Mlp::out_dim() const { return layers_.empty() ? 0 : layers_.back().out_dim(); }

std::vector<Tensor> Mlp::parameters() const {
  std::vector<Tensor> out;
  for (const auto& l : layers_) {
    out.push_back(l.weight);
    out.push_back(l.bias);
  }
  return out;
}

std::vector<std::pair<std::string, Tensor>> Mlp::named_parameters(const std::string& prefix) const {
  std::vector<std::pair<std::string, Tensor>> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    out.emplace_back(prefix + "." + std::to_string(i) + ".weight", layers_[i].weight);
    out.emplace_back(prefix + "." + std::to_string(i) + ".bias", layers_[i].bias);
  }
  return out;
}

void Mlp::zero_grad() {
  for (auto& l : layers_) {
    l.weight.zero_grad();
    l.bias.zero_grad();
  }
}

}  // namespace syncgan
