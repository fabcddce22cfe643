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
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"

namespace syncgan {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hyperparameters for one training run. JSON keys match the field names;
/// unknown keys are rejected.
struct TrainConfig {
  std::size_t batch_size = 128;
  std::size_t latent_dim = 64;
  double sync_pair_ratio = 0.5;
  double semi_rate = 1.0;
  double learning_rate = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  SynchronizerVariant synchronizer_variant = SynchronizerVariant::kCrossModal;
  std::size_t image_size = 16;
  std::vector<std::size_t> generator_hidden{256, 512};
  std::vector<std::size_t> discriminator_hidden{512, 256};
  std::size_t sync_feature_dim = 128;
  std::size_t sync_hidden = 256;
  std::uint64_t checkpoint_every = 0;  // 0: only at the end
  std::string dataset;                 // make-data output directory (CLI)
  bool log_wall_time = false;          // false writes wall_ms = 0 for reproducible CSVs

  /// Test-only: permits sync_pair_ratio == 1.0. Not settable from JSON.
  bool allow_identical_only = false;

  void validate() const;
  std::size_t identical_pairs() const;

  std::string to_json() const;
  static TrainConfig from_json(const std::string& text);
  static TrainConfig from_file(const std::filesystem::path& path);

  ModelSpec model_spec(const SampleShape& shape1, const SampleShape& shape2) const;
};

std::string model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const std::string& text);

}  // namespace syncgan
