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

#include "tensor.hpp"

namespace syncgan {

/// Scores are clamped to [kScoreEpsilon, 1 - kScoreEpsilon] before any log.
inline constexpr double kScoreEpsilon = 1e-7;

enum class LossPhase { kDisc1, kDisc2, kSync, kGen1Adv, kGen2Adv, kGenSync };

const char* phase_name(LossPhase phase);

/// A taped scalar objective. All objectives are stated in the maximize
/// convention; the trainer descends their negation.
struct LossValue {
  Tensor value;
  LossPhase phase;

  double item() const { return value.item(); }
};

/// mean(log d_real) + mean(log(1 - d_fake))
LossValue discriminator_loss(const Tensor& d_real, const Tensor& d_fake, LossPhase phase = LossPhase::kDisc1);

/// mean(log d_fake), the non-saturating generator objective.
LossValue generator_adv_loss(const Tensor& d_fake, LossPhase phase = LossPhase::kGen1Adv);

/// mean(log s_sync) + mean(log(1 - s_async)) over real pairs.
LossValue synchronizer_loss(const Tensor& s_sync, const Tensor& s_async);

/// mean(log s_same_z) + mean(log(1 - s_diff_z)) over generated pairs.
LossValue generator_sync_loss(const Tensor& s_same_z, const Tensor& s_diff_z);

}  // namespace syncgan
