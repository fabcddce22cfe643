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

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nn.hpp"

namespace syncgan {

/// Topology of the synchronizer. Cross-modal data gets one feature
/// extractor per modality feeding a fused head; style-transfer data is
/// concatenated and scored by a single network.
enum class SynchronizerVariant { kCrossModal, kStyleTransfer };

const char* variant_name(SynchronizerVariant v);
SynchronizerVariant parse_variant(const std::string& name);

/// Spatial layout of one modality's samples; data_dim = height * width.
struct SampleShape {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t dim() const { return height * width; }
  bool operator==(const SampleShape&) const = default;
};

struct ModelSpec {
  std::size_t latent_dim = 64;
  std::array<SampleShape, 2> shapes{};
  SynchronizerVariant variant = SynchronizerVariant::kCrossModal;
  std::vector<std::size_t> generator_hidden{256, 512};
  std::vector<std::size_t> discriminator_hidden{512, 256};
  std::size_t sync_feature_dim = 128;
  std::size_t sync_hidden = 256;

  std::size_t data_dim(int modality) const;
  void validate() const;
};

struct Synchronizer {
  SynchronizerVariant variant = SynchronizerVariant::kCrossModal;
  Mlp extract1;  // cross-modal only
  Mlp extract2;  // cross-modal only
  Mlp head;      // fused head, or the whole network for style transfer

  Tensor score(const Tensor& x1, const Tensor& x2) const;
  std::vector<Tensor> parameters() const;
  std::vector<std::pair<std::string, Tensor>> named_parameters() const;
  void zero_grad();
};

/// The five networks: generators G1/G2, discriminators D1/D2, and the
/// synchronizer S.
class SyncGanModel {
 public:
  SyncGanModel() = default;
  static SyncGanModel create(const ModelSpec& spec, Rng& rng);

  const ModelSpec& spec() const { return spec_; }

  /// G_m(z); z is [batch x latent_dim]. Outputs lie in (-1, 1).
  Tensor generate(const Tensor& z, int modality) const;
  /// D_m(x); probability that each row is real data of modality m.
  Tensor discriminate(const Tensor& x, int modality) const;
  /// S(x1, x2); probability that row i of x1 and row i of x2 are synchronous.
  Tensor sync_score(const Tensor& x1, const Tensor& x2) const;

  const Mlp& generator(int modality) const;
  Mlp& generator(int modality);
  const Mlp& discriminator(int modality) const;
  Mlp& discriminator(int modality);
  const Synchronizer& synchronizer() const { return sync_; }
  Synchronizer& synchronizer() { return sync_; }

  /// Stable, ordered names for every parameter tensor ("g1.0.weight", ...).
  std::vector<std::pair<std::string, Tensor>> named_parameters() const;

 private:
  ModelSpec spec_;
  Mlp g1_, g2_, d1_, d2_;
  Synchronizer sync_;
};

void check_modality(int modality);

}  // namespace syncgan
