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
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "data.hpp"
#include "model.hpp"
#include "nn.hpp"
#include "rng.hpp"

namespace syncgan {

struct LabeledSet {
  Tensor x;  // [N x d]
  std::vector<int> labels;
};

/// Concept-labelled items of one modality of a paired dataset.
LabeledSet modality_set(const PairedDataset& ds, int modality);

struct ClassifierOptions {
  std::size_t hidden = 256;
  std::size_t batch_size = 64;
  double learning_rate = 1e-3;
  double holdout_fraction = 0.2;
};

/// Dense softmax classifier (in_dim -> hidden -> n_classes).
struct Classifier {
  Mlp net;
  std::size_t num_classes = 0;
  double heldout_accuracy = 0.0;

  std::vector<int> predict(const Tensor& x) const;
};

/// Trains on a random (1 - holdout_fraction) split with cross-entropy and
/// Adam; heldout_accuracy is measured on the rest.
Classifier train_classifier(const LabeledSet& data, std::size_t epochs, Rng& rng, const ClassifierOptions& options = {});
double accuracy(const Classifier& clf, const LabeledSet& data);

struct SyncRateReport {
  std::size_t n_pairs = 0;
  std::size_t n_agree = 0;
  double sync_rate = 0.0;
  std::vector<std::vector<std::size_t>> confusion;  // [label1][label2]
  double classifier1_accuracy = 0.0;
  double classifier2_accuracy = 0.0;
  double semi_rate = 0.0;
  std::size_t batch_size = 0;
  std::uint64_t seed = 0;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Agreement statistics of two label sequences.
SyncRateReport agreement_report(const std::vector<int>& labels1, const std::vector<int>& labels2,
                                std::size_t num_classes);

/// Generates (G1(z), G2(z)) for n_pairs draws of z and counts how often the
/// two classifiers agree.
SyncRateReport sync_rate(const SyncGanModel& model, const Classifier& clf1, const Classifier& clf2,
                         std::size_t n_pairs, Rng& rng);

struct SweepRow {
  double rate = 0.0;
  std::optional<double> sync_rate;
  std::string error;
};

/// Trains one model per semi-supervised rate with the same seed and budget and
/// reports the synchronous rate of each. A failing cell records its error and
/// the sweep continues.
std::vector<SweepRow> semi_supervised_sweep(const std::vector<double>& rates, const TrainConfig& config,
                                            const PairedDataset& ds, const Classifier& clf1, const Classifier& clf2,
                                            std::size_t n_pairs);

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Mean pairwise Euclidean distance between the rows of x.
double mean_pairwise_distance(const Tensor& x);

}  // namespace syncgan
