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

#include <functional>
#include <string>
#include <vector>

#include "gradcheck.hpp"

namespace syncgan::testing {

/// One random instance of a gradient check: leaf inputs plus the scalar
/// function of them.
struct GradInstance {
  std::vector<Tensor> inputs;
  ScalarFn fn;
};

struct GradCase {
  std::string name;
  std::function<GradInstance(Rng&)> make;
};

/// A case for every taped op kind.
std::vector<GradCase> op_grad_cases();
/// The four adversarial objectives, differentiated through score inputs.
std::vector<GradCase> loss_grad_cases();

}  // namespace syncgan::testing
