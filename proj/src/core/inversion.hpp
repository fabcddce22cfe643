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
#include <functional>
#include <optional>
#include <vector>

#include "model.hpp"
#include "rng.hpp"
#include "tensor.hpp"

namespace syncgan {

struct InversionConfig {
  double eta = 0.1;
  std::size_t max_steps = 500;
  std::size_t restarts = 3;
  double tol = 1e-3;  // stop once the reconstruction MSE falls below this
  /// Test-only: start the (single) restart here instead of Normal(0, 1).
  std::optional<std::vector<double>> init;

  void validate() const;
};

struct RestartResult {
  std::vector<double> z;
  double mse = 0.0;
  std::size_t steps = 0;  // accepted steps
  bool failed = false;    // non-finite gradient or objective
  std::vector<double> mse_trace;  // MSE after each accepted step, starting with the initial point
};

struct InversionResult {
  Tensor z_hat;  // [1 x latent_dim]
  double final_mse = 0.0;
  bool all_failed = false;
  std::vector<RestartResult> restarts;
};

/// Maps a [1 x latent_dim] latent batch to a [1 x data_dim] sample with taped ops.
using GeneratorFn = std::function<Tensor(const Tensor&)>;

/// Gradient descent on z over ||x_target - G(z)||^2 from Normal(0, 1) starts.
/// A step that raises the objective is retried with eta halved. Returns the
/// restart with the lowest final MSE.
InversionResult invert_latent(const GeneratorFn& generator, std::size_t latent_dim, const Tensor& x_target,
                              const InversionConfig& config, Rng& rng);
InversionResult invert_latent(const Mlp& generator, const Tensor& x_target, const InversionConfig& config, Rng& rng);

/// G_to(z_hat) where z_hat inverts x under G_from. x is [1 x data_dim_from].
Tensor transfer(const SyncGanModel& model, const Tensor& x, int from_modality, int to_modality,
                const InversionConfig& config, Rng& rng, InversionResult* details = nullptr);

}  // namespace syncgan
