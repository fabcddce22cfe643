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

#include "inversion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace syncgan {

namespace {

constexpr int kMaxHalvings = 40;

struct Probe {
  Tensor z;
  Tensor objective;
  double value;
};

Probe probe(const GeneratorFn& generator, std::vector<double> z_values, const Tensor& x_target) {
  const std::size_t n = z_values.size();
  Tensor z({1, n}, std::move(z_values), true);
  const Tensor diff = sub(generator(z), x_target);
  Tensor objective = sum(mul(diff, diff));
  const double value = objective.item();
  return {z, objective, value};
}

RestartResult run_restart(const GeneratorFn& generator, std::vector<double> start, const Tensor& x_target,
                          const InversionConfig& cfg) {
  auto& tape = ComputationTape::current();
  const double dim = static_cast<double>(x_target.numel());
  RestartResult r;
  double eta = cfg.eta;
  auto current = probe(generator, std::move(start), x_target);
  r.mse_trace.push_back(current.value / dim);
  while (true) {
    r.mse = current.value / dim;
    r.z.assign(current.z.data().begin(), current.z.data().end());
    if (!std::isfinite(current.value)) {
      r.failed = true;
      break;
    }
    if (r.mse < cfg.tol || r.steps >= cfg.max_steps) break;

    backward(current.objective, {false, {current.z}, 1.0});
    const auto grad = current.z.grad();
    bool finite = true;
    for (double g : grad) finite = finite && std::isfinite(g);
    if (!finite) {
      r.failed = true;
      break;
    }
    std::vector<double> grad_copy(grad.begin(), grad.end());

    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      std::vector<double> next(r.z.size());
      for (std::size_t k = 0; k < next.size(); ++k) next[k] = r.z[k] - eta * grad_copy[k];
      auto candidate = probe(generator, std::move(next), x_target);
      if (std::isfinite(candidate.value) && candidate.value <= current.value) {
        current = std::move(candidate);
        accepted = true;
        break;
      }
      tape.clear();
      eta *= 0.5;
    }
    if (!accepted) break;  // no descent direction left at machine precision
    ++r.steps;
    r.mse_trace.push_back(current.value / dim);
  }
  tape.clear();
  return r;
}

}  // namespace

void InversionConfig::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("inversion: eta must be positive");
  if (max_steps < 1) throw std::invalid_argument("inversion: max_steps must be at least 1");
  if (restarts < 1) throw std::invalid_argument("inversion: restarts must be at least 1");
}

InversionResult invert_latent(const GeneratorFn& generator, std::size_t latent_dim, const Tensor& x_target,
                              const InversionConfig& config, Rng& rng) {
  config.validate();
  if (x_target.rank() != 2 || x_target.dim(0) != 1)
    throw TensorError("invert_latent: target must be a single [1 x d] sample, got " + shape_str(x_target.shape()));
  const Tensor target = x_target.detach();
  InversionResult result;
  const std::size_t runs = config.init ? 1 : config.restarts;
  for (std::size_t k = 0; k < runs; ++k) {
    std::vector<double> start = config.init ? *config.init : rng.normal_vector(latent_dim);
    if (start.size() != latent_dim) throw TensorError("invert_latent: init has the wrong latent dim");
    result.restarts.push_back(run_restart(generator, std::move(start), target, config));
  }
  bool any_ok = false;
  for (const auto& r : result.restarts) any_ok = any_ok || !r.failed;
  std::size_t best = result.restarts.size();
  for (std::size_t k = 0; k < result.restarts.size(); ++k) {
    const auto& r = result.restarts[k];
    if (any_ok && r.failed) continue;
    if (best == result.restarts.size() || r.mse < result.restarts[best].mse) best = k;
  }
  result.all_failed = !any_ok;
  const auto& chosen = result.restarts[best];
  result.z_hat = Tensor({1, latent_dim}, chosen.z);
  result.final_mse = chosen.mse;
  return result;
}

InversionResult invert_latent(const Mlp& generator, const Tensor& x_target, const InversionConfig& config, Rng& rng) {
  if (x_target.rank() != 2 || x_target.dim(1) != generator.out_dim())
    throw TensorError("invert_latent: target " + shape_str(x_target.shape()) + " does not match generator output " +
                      std::to_string(generator.out_dim()));
  return invert_latent([&generator](const Tensor& z) { return generator.forward(z); }, generator.in_dim(), x_target,
                       config, rng);
}

Tensor transfer(const SyncGanModel& model, const Tensor& x, int from_modality, int to_modality,
                const InversionConfig& config, Rng& rng, InversionResult* details) {
  check_modality(from_modality);
  check_modality(to_modality);
  if (from_modality == to_modality) throw std::invalid_argument("transfer: source and target modality are the same");
  auto inv = invert_latent(model.generator(from_modality), x, config, rng);
  Tensor out;
  {
    NoGradGuard no_grad;
    out = model.generate(inv.z_hat, to_modality);
  }
  if (details) *details = std::move(inv);
  return out;
}

}  // namespace syncgan
