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

#include "fixtures.hpp"

namespace syncgan::testing {

PairedDataset tiny_dataset(std::size_t n_pairs, std::uint64_t seed) {
  Rng rng(seed);
  RawImageCorpus c;
  c.height = c.width = 4;
  for (int i = 0; i < 40; ++i) {
    const int label = i % 2;
    c.labels.push_back(label);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t col = 0; col < 4; ++col) {
        const bool bright = label == 0 ? col < 2 : col >= 2;
        const double base = bright ? 220.0 : 30.0;
        c.pixels.push_back(static_cast<std::uint8_t>(base + rng.uniform(-25.0, 25.0)));
      }
  }
  return build_paired_dataset(c, rotate90(c), ClassMap{{0, 0}, {1, 1}}, n_pairs, 1.0, rng);
}

TrainConfig tiny_config(std::uint64_t iterations, std::uint64_t seed) {
  TrainConfig c;
  c.batch_size = 8;
  c.latent_dim = 3;
  c.iterations = iterations;
  c.seed = seed;
  c.image_size = 4;
  c.generator_hidden = {8};
  c.discriminator_hidden = {8};
  c.sync_feature_dim = 4;
  c.sync_hidden = 6;
  c.learning_rate = 1e-3;
  return c;
}

Matrix to_matrix(const Tensor& t) {
  Matrix m(t.dim(0), std::vector<double>(t.dim(1)));
  for (std::size_t i = 0; i < t.dim(0); ++i)
    for (std::size_t j = 0; j < t.dim(1); ++j) m[i][j] = t.at(i, j);
  return m;
}

namespace {

RefAct ref_act(Activation a) {
  switch (a) {
    case Activation::kLeakyRelu: return RefAct::kLeaky;
    case Activation::kTanh: return RefAct::kTanh;
    case Activation::kSigmoid: return RefAct::kSigmoid;
    case Activation::kIdentity: return RefAct::kNone;
  }
  return RefAct::kNone;
}

}  // namespace

std::vector<RefLayer> ref_layers(const Mlp& net) {
  std::vector<RefLayer> out;
  for (const auto& l : net.layers())
    out.push_back({to_matrix(l.weight), {l.bias.data().begin(), l.bias.data().end()}, ref_act(l.activation)});
  return out;
}

}  // namespace syncgan::testing
