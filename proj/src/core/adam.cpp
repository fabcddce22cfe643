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

#include "adam.hpp"

#include <cmath>
#include <string>

namespace syncgan {

void adam_step(std::span<Tensor> params, AdamState& state) {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (!params[i].has_grad())
      throw TensorError("adam_step: parameter " + std::to_string(i) + " " + shape_str(params[i].shape()) +
                        " has no gradient");
  if (state.first_moment.empty()) {
    for (const auto& p : params) {
      state.first_moment.emplace_back(p.numel(), 0.0);
      state.second_moment.emplace_back(p.numel(), 0.0);
    }
  }
  if (state.first_moment.size() != params.size())
    throw TensorError("adam_step: state holds " + std::to_string(state.first_moment.size()) +
                      " buffers for " + std::to_string(params.size()) + " parameters");

  const auto& o = state.options;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(o.beta1, t);
  const double correction2 = 1.0 - std::pow(o.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto value = params[i].mutable_data();
    auto grad = params[i].grad();
    auto& m = state.first_moment[i];
    auto& v = state.second_moment[i];
    if (m.size() != value.size()) throw TensorError("adam_step: moment buffer shape mismatch");
    for (std::size_t k = 0; k < value.size(); ++k) {
      m[k] = o.beta1 * m[k] + (1.0 - o.beta1) * grad[k];
      v[k] = o.beta2 * v[k] + (1.0 - o.beta2) * grad[k] * grad[k];
      const double m_hat = m[k] / correction1;
      const double v_hat = v[k] / correction2;
      value[k] -= o.learning_rate * m_hat / (std::sqrt(v_hat) + o.epsilon);
    }
  }
}

}  // namespace syncgan
