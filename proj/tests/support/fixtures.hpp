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

#include "config.hpp"
#include "data.hpp"
#include "nn.hpp"
#include "oracles.hpp"

namespace syncgan::testing {

/// Two-class paired dataset of 4x4 blobs: class 0 is bright on the left,
/// class 1 bright on the right; modality 2 is the quarter-turned image.
PairedDataset tiny_dataset(std::size_t n_pairs, std::uint64_t seed);

/// Narrow networks sized for tiny_dataset.
TrainConfig tiny_config(std::uint64_t iterations, std::uint64_t seed);

/// Copies of library values in the oracles' plain types.
Matrix to_matrix(const Tensor& t);
std::vector<RefLayer> ref_layers(const Mlp& net);

}  // namespace syncgan::testing
