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
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adam.hpp"
#include "config.hpp"
#include "data.hpp"
#include "losses.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace syncgan {

/// Raised when a loss turns non-finite; names the offending phase.
class NumericError : public std::runtime_error {
 public:
  NumericError(LossPhase phase, const std::string& msg) : std::runtime_error(msg), phase_(phase) {}
  LossPhase phase() const { return phase_; }

 private:
  LossPhase phase_;
};

enum class Network { kS = 0, kD1, kD2, kG1, kG2 };
inline constexpr std::array<Network, 5> kAllNetworks{Network::kS, Network::kD1, Network::kD2, Network::kG1,
                                                     Network::kG2};
const char* network_name(Network n);
std::vector<Tensor> network_parameters(const SyncGanModel& model, Network n);

struct LatentPairs {
  Tensor z1;  // [batch x latent_dim]
  Tensor z2;
  std::vector<std::uint8_t> sync_flags;  // true rows have z2 == z1
};

/// The first round(batch * ratio) rows share one draw between z1 and z2; the
/// remaining rows are drawn independently. All entries ~ Normal(0, 1).
LatentPairs sample_latent_pairs(std::size_t batch, std::size_t latent_dim, double ratio, Rng& rng);

struct IterationMetrics {
  std::uint64_t iteration = 0;  // 1-based index of the completed iteration
  double loss_d1 = 0, loss_d2 = 0;
  double loss_g1_adv = 0, loss_g2_adv = 0;
  double loss_sync = 0, loss_gen_sync = 0;
  bool sync_skipped = false;
  double wall_ms = 0;
};

/// Holds everything a training run mutates: the model, five optimizer
/// states, the random stream and the iteration counter.
class Trainer {
 public:
  Trainer(SyncGanModel model, TrainConfig config);
  /// Fresh model for the dataset's modality shapes, initialized from config.seed.
  static Trainer create(const TrainConfig& config, const PairedDataset& ds);

  /// One iteration: losses, gradients, then the S, D1, D2, G1, G2 updates.
  IterationMetrics step(const PairedDataset& ds);

  /// Both batch phases and both backward passes, without updating anything.
  IterationMetrics compute_gradients(const PairedDataset& ds);
  void apply_update(Network n);

  const SyncGanModel& model() const { return model_; }
  SyncGanModel& model() { return model_; }
  const TrainConfig& config() const { return config_; }
  TrainConfig& config() { return config_; }
  const AdamState& optimizer(Network n) const { return optimizers_[static_cast<int>(n)]; }
  Rng& rng() { return rng_; }
  std::uint64_t iteration() const { return iteration_; }

  void save_checkpoint(const std::filesystem::path& path) const;
  static Trainer load_checkpoint(const std::filesystem::path& path);

 private:
  SyncGanModel model_;
  TrainConfig config_;
  std::array<AdamState, 5> optimizers_;
  Rng rng_;
  std::uint64_t iteration_ = 0;
};

/// Marks round(config.semi_rate * N) entries as paired, drawing the subset
/// from a stream derived from config.seed so the mask is reproducible.
void apply_semi_rate(PairedDataset& ds, const TrainConfig& config);

/// Reads only the model from a checkpoint.
SyncGanModel load_model(const std::filesystem::path& checkpoint);

inline constexpr const char* kCheckpointFile = "checkpoint.sygn";
inline constexpr const char* kMetricsFile = "metrics.csv";
inline constexpr const char* kMetricsHeader = "iter,L_D1,L_D2,L_G1_Dis,L_G2_Dis,L_S,L_G_Sync,wall_ms";

std::string format_metrics_row(const IterationMetrics& m);

/// Runs iterations until config().iterations, appending one CSV row per
/// iteration to out_dir/metrics.csv and writing out_dir/checkpoint.sygn every
/// checkpoint_every iterations and at the end. A trainer restored from a
/// checkpoint continues the existing CSV.
void train(Trainer& trainer, const PairedDataset& ds, const std::filesystem::path& out_dir,
           const std::function<void(const IterationMetrics&)>& on_iteration = {});

}  // namespace syncgan
