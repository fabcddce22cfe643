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

#include "losses.hpp"

#include <string>

namespace syncgan {

namespace {

void require_scores(const Tensor& s, const char* what) {
  if (!s.defined() || s.numel() == 0) throw TensorError(std::string(what) + ": empty score batch");
}

Tensor mean_log(const Tensor& s) { return mean(log(clamp(s, kScoreEpsilon, 1.0 - kScoreEpsilon))); }

Tensor mean_log_complement(const Tensor& s) {
  return mean(log(shift(scale(clamp(s, kScoreEpsilon, 1.0 - kScoreEpsilon), -1.0), 1.0)));
}

}  // namespace

const char* phase_name(LossPhase phase) {
  switch (phase) {
    case LossPhase::kDisc1: return "L_D1";
    case LossPhase::kDisc2: return "L_D2";
    case LossPhase::kSync: return "L_S";
    case LossPhase::kGen1Adv: return "L_G1_Dis";
    case LossPhase::kGen2Adv: return "L_G2_Dis";
    case LossPhase::kGenSync: return "L_G_Sync";
  }
  return "?";
}

LossValue discriminator_loss(const Tensor& d_real, const Tensor& d_fake, LossPhase phase) {
  require_scores(d_real, "discriminator_loss");
  require_scores(d_fake, "discriminator_loss");
  return {add(mean_log(d_real), mean_log_complement(d_fake)), phase};
}

LossValue generator_adv_loss(const Tensor& d_fake, LossPhase phase) {
  require_scores(d_fake, "generator_adv_loss");
  return {mean_log(d_fake), phase};
}

LossValue synchronizer_loss(const Tensor& s_sync, const Tensor& s_async) {
  require_scores(s_sync, "synchronizer_loss");
  require_scores(s_async, "synchronizer_loss");
  return {add(mean_log(s_sync), mean_log_complement(s_async)), LossPhase::kSync};
}

LossValue generator_sync_loss(const Tensor& s_same_z, const Tensor& s_diff_z) {
  require_scores(s_same_z, "generator_sync_loss");
  require_scores(s_diff_z, "generator_sync_loss");
  return {add(mean_log(s_same_z), mean_log_complement(s_diff_z)), LossPhase::kGenSync};
}

}  // namespace syncgan
