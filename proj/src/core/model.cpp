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

#include "model.hpp"

#include <stdexcept>

namespace syncgan {

void check_modality(int modality) {
  if (modality != 1 && modality != 2)
    throw std::invalid_argument("modality must be 1 or 2, got " + std::to_string(modality));
}

const char* variant_name(SynchronizerVariant v) {
  return v == SynchronizerVariant::kCrossModal ? "cross-modal" : "style-transfer";
}

SynchronizerVariant parse_variant(const std::string& name) {
  if (name == "cross-modal") return SynchronizerVariant::kCrossModal;
  if (name == "style-transfer") return SynchronizerVariant::kStyleTransfer;
  throw std::invalid_argument("unknown synchronizer variant '" + name + "' (expected cross-modal or style-transfer)");
}

std::size_t ModelSpec::data_dim(int modality) const {
  check_modality(modality);
  return shapes[modality - 1].dim();
}

void ModelSpec::validate() const {
  if (latent_dim == 0) throw std::invalid_argument("model: latent_dim must be positive");
  for (int m = 1; m <= 2; ++m)
    if (data_dim(m) == 0) throw std::invalid_argument("model: modality " + std::to_string(m) + " has no data dims");
  for (auto h : generator_hidden)
    if (h == 0) throw std::invalid_argument("model: zero-width generator layer");
  for (auto h : discriminator_hidden)
    if (h == 0) throw std::invalid_argument("model: zero-width discriminator layer");
  if (sync_feature_dim == 0 || sync_hidden == 0) throw std::invalid_argument("model: zero-width synchronizer layer");
}

Tensor Synchronizer::score(const Tensor& x1, const Tensor& x2) const {
  if (x1.rank() != 2 || x2.rank() != 2 || x1.dim(0) != x2.dim(0))
    throw TensorError("sync_score: batch mismatch " + shape_str(x1.shape()) + " vs " + shape_str(x2.shape()));
  if (variant == SynchronizerVariant::kCrossModal)
    return head.forward(concat({extract1.forward(x1), extract2.forward(x2)}, 1));
  return head.forward(concat({x1, x2}, 1));
}

std::vector<Tensor> Synchronizer::parameters() const {
  std::vector<Tensor> out;
  for (const auto& [name, t] : named_parameters()) out.push_back(t);
  return out;
}

std::vector<std::pair<std::string, Tensor>> Synchronizer::named_parameters() const {
  std::vector<std::pair<std::string, Tensor>> out;
  if (variant == SynchronizerVariant::kCrossModal) {
    for (auto& p : extract1.named_parameters("s.n1")) out.push_back(std::move(p));
    for (auto& p : extract2.named_parameters("s.n2")) out.push_back(std::move(p));
    for (auto& p : head.named_parameters("s.nf")) out.push_back(std::move(p));
  } else {
    for (auto& p : head.named_parameters("s.net")) out.push_back(std::move(p));
  }
  return out;
}

void Synchronizer::zero_grad() {
  extract1.zero_grad();
  extract2.zero_grad();
  head.zero_grad();
}

SyncGanModel SyncGanModel::create(const ModelSpec& spec, Rng& rng) {
  spec.validate();
  SyncGanModel model;
  model.spec_ = spec;
  for (int m = 1; m <= 2; ++m) {
    std::vector<std::size_t> gdims{spec.latent_dim};
    gdims.insert(gdims.end(), spec.generator_hidden.begin(), spec.generator_hidden.end());
    gdims.push_back(spec.data_dim(m));
    model.generator(m) = Mlp::create(gdims, Activation::kLeakyRelu, Activation::kTanh, rng);
  }
  for (int m = 1; m <= 2; ++m) {
    std::vector<std::size_t> ddims{spec.data_dim(m)};
    ddims.insert(ddims.end(), spec.discriminator_hidden.begin(), spec.discriminator_hidden.end());
    ddims.push_back(1);
    model.discriminator(m) = Mlp::create(ddims, Activation::kLeakyRelu, Activation::kSigmoid, rng);
  }
  auto& s = model.sync_;
  s.variant = spec.variant;
  if (spec.variant == SynchronizerVariant::kCrossModal) {
    s.extract1 = Mlp::create({spec.data_dim(1), spec.sync_feature_dim}, Activation::kLeakyRelu,
                             Activation::kLeakyRelu, rng);
    s.extract2 = Mlp::create({spec.data_dim(2), spec.sync_feature_dim}, Activation::kLeakyRelu,
                             Activation::kLeakyRelu, rng);
    s.head = Mlp::create({2 * spec.sync_feature_dim, spec.sync_hidden, 1}, Activation::kLeakyRelu,
                         Activation::kSigmoid, rng);
  } else {
    s.head = Mlp::create({spec.data_dim(1) + spec.data_dim(2), spec.sync_hidden, 1}, Activation::kLeakyRelu,
                         Activation::kSigmoid, rng);
  }
  return model;
}

Tensor SyncGanModel::generate(const Tensor& z, int modality) const {
  if (z.rank() != 2 || z.dim(1) != spec_.latent_dim)
    throw TensorError("generate: latent batch " + shape_str(z.shape()) + " does not match latent_dim " +
                      std::to_string(spec_.latent_dim));
  return generator(modality).forward(z);
}

Tensor SyncGanModel::discriminate(const Tensor& x, int modality) const {
  if (x.rank() != 2 || x.dim(1) != spec_.data_dim(modality))
    throw TensorError("discriminate: input " + shape_str(x.shape()) + " does not match modality " +
                      std::to_string(modality) + " dim " + std::to_string(spec_.data_dim(modality)));
  return discriminator(modality).forward(x);
}

Tensor SyncGanModel::sync_score(const Tensor& x1, const Tensor& x2) const {
  if (x1.rank() != 2 || x1.dim(1) != spec_.data_dim(1) || x2.rank() != 2 || x2.dim(1) != spec_.data_dim(2))
    throw TensorError("sync_score: inputs " + shape_str(x1.shape()) + " and " + shape_str(x2.shape()) +
                      " do not match the modality dims");
  return sync_.score(x1, x2);
}

const Mlp& SyncGanModel::generator(int modality) const {
  check_modality(modality);
  return modality == 1 ? g1_ : g2_;
}
Mlp& SyncGanModel::generator(int modality) {
  check_modality(modality);
  return modality == 1 ? g1_ : g2_;
}
const Mlp& SyncGanModel::discriminator(int modality) const {
  check_modality(modality);
  return modality == 1 ? d1_ : d2_;
}
Mlp& SyncGanModel::discriminator(int modality) {
  check_modality(modality);
  return modality == 1 ? d1_ : d2_;
}

std::vector<std::pair<std::string, Tensor>> SyncGanModel::named_parameters() const {
  std::vector<std::pair<std::string, Tensor>> out;
  for (auto& p : g1_.named_parameters("g1")) out.push_back(std::move(p));
  for (auto& p : g2_.named_parameters("g2")) out.push_back(std::move(p));
  for (auto& p : d1_.named_parameters("d1")) out.push_back(std::move(p));
  for (auto& p : d2_.named_parameters("d2")) out.push_back(std::move(p));
  for (auto& p : sync_.named_parameters()) out.push_back(std::move(p));
  return out;
}

}  // namespace syncgan
