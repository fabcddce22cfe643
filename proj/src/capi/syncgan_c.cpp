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

#include "syncgan/syncgan.h"

#include <filesystem>
#include <string>

#include "commands.hpp"
#include "data.hpp"
#include "json.hpp"
#include "trainer.hpp"

struct syncgan_model {
  syncgan::SyncGanModel model;
};

namespace {

thread_local std::string g_last_error;

syncgan_status fail(syncgan_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
syncgan_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return SYNCGAN_OK;
  } catch (const syncgan::NumericError& e) {
    return fail(SYNCGAN_ERR_NUMERIC, e.what());
  } catch (const syncgan::cmd::NumericAbort& e) {
    return fail(SYNCGAN_ERR_NUMERIC, e.what());
  } catch (const syncgan::ConfigError& e) {
    return fail(SYNCGAN_ERR_CONFIG, e.what());
  } catch (const syncgan::DataError& e) {
    return fail(SYNCGAN_ERR_DATA, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SYNCGAN_ERR_DATA, std::string("malformed JSON: ") + e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(SYNCGAN_ERR_DATA, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SYNCGAN_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(SYNCGAN_ERR_DATA, e.what());
  }
}

bool null_arg(const void* p, const char* name, syncgan_status* out) {
  if (p != nullptr) return false;
  *out = fail(SYNCGAN_ERR_CONFIG, std::string(name) + " must not be NULL");
  return true;
}

std::optional<std::uint64_t> opt_seed(const uint64_t* seed) {
  return seed ? std::optional<std::uint64_t>(*seed) : std::nullopt;
}

}  // namespace

extern "C" {

const char* syncgan_version(void) { return "0.1.0"; }

const char* syncgan_last_error(void) { return g_last_error.c_str(); }

syncgan_status syncgan_model_load(const char* checkpoint, syncgan_model** out) {
  syncgan_status s;
  if (null_arg(checkpoint, "checkpoint", &s) || null_arg(out, "out", &s)) return s;
  *out = nullptr;
  return guarded([&] { *out = new syncgan_model{syncgan::load_model(checkpoint)}; });
}

void syncgan_model_free(syncgan_model* model) { delete model; }

size_t syncgan_model_latent_dim(const syncgan_model* model) { return model ? model->model.spec().latent_dim : 0; }

syncgan_status syncgan_model_sample_shape(const syncgan_model* model, int modality, size_t* height, size_t* width) {
  syncgan_status s;
  if (null_arg(model, "model", &s) || null_arg(height, "height", &s) || null_arg(width, "width", &s)) return s;
  return guarded([&] {
    syncgan::check_modality(modality);
    const auto& shape = model->model.spec().shapes[modality - 1];
    *height = shape.height;
    *width = shape.width;
  });
}

syncgan_status syncgan_model_generate(const syncgan_model* model, const double* z, size_t n, int modality,
                                      double* out) {
  syncgan_status s;
  if (null_arg(model, "model", &s)) return s;
  if (n == 0) return guarded([] {});
  if (null_arg(z, "z", &s) || null_arg(out, "out", &s)) return s;
  return guarded([&] {
    const auto latent = model->model.spec().latent_dim;
    syncgan::NoGradGuard no_grad;
    const syncgan::Tensor zt({n, latent}, std::vector<double>(z, z + n * latent));
    const auto x = model->model.generate(zt, modality);
    std::copy(x.data().begin(), x.data().end(), out);
  });
}

syncgan_status syncgan_train(const char* config_path, const char* out_dir, const char* data_root,
                             const uint64_t* seed) {
  syncgan_status s;
  if (null_arg(config_path, "config_path", &s) || null_arg(out_dir, "out_dir", &s)) return s;
  return guarded([&] { syncgan::cmd::train(config_path, out_dir, data_root, opt_seed(seed)); });
}

syncgan_status syncgan_generate(const char* checkpoint, size_t n, uint64_t seed, const char* out_dir) {
  syncgan_status s;
  if (null_arg(checkpoint, "checkpoint", &s) || null_arg(out_dir, "out_dir", &s)) return s;
  return guarded([&] { syncgan::cmd::generate(checkpoint, n, seed, out_dir); });
}

syncgan_status syncgan_transfer(const char* checkpoint, const char* input_idx, const char* output_idx, int from,
                                int to, uint64_t seed, double* final_mse) {
  syncgan_status s;
  if (null_arg(checkpoint, "checkpoint", &s) || null_arg(input_idx, "input_idx", &s) ||
      null_arg(output_idx, "output_idx", &s))
    return s;
  return guarded([&] {
    const double mse = syncgan::cmd::transfer(checkpoint, input_idx, output_idx, from, to, seed);
    if (final_mse) *final_mse = mse;
  });
}

syncgan_status syncgan_eval_sync(const char* checkpoint, const char* dataset, const char* data_root, size_t n_pairs,
                                 size_t classifier_epochs, uint64_t seed, const char* out_dir, double* sync_rate) {
  syncgan_status s;
  if (null_arg(checkpoint, "checkpoint", &s) || null_arg(out_dir, "out_dir", &s)) return s;
  return guarded([&] {
    const double r =
        syncgan::cmd::eval_sync(checkpoint, dataset, data_root, n_pairs, classifier_epochs, seed, out_dir);
    if (sync_rate) *sync_rate = r;
  });
}

syncgan_status syncgan_sweep(const char* config_path, const double* rates, size_t n_rates, size_t n_pairs,
                             size_t classifier_epochs, const char* data_root, const uint64_t* seed,
                             const char* out_dir) {
  syncgan_status s;
  if (null_arg(config_path, "config_path", &s) || null_arg(out_dir, "out_dir", &s)) return s;
  if (n_rates > 0 && null_arg(rates, "rates", &s)) return s;
  return guarded([&] {
    const std::vector<double> r(rates, rates + n_rates);
    syncgan::cmd::sweep(config_path, r, n_pairs, classifier_epochs, data_root, opt_seed(seed), out_dir);
  });
}

syncgan_status syncgan_make_data(const char* kind, const char* source_root, const char* out_dir, uint64_t seed,
                                 size_t n_pairs, size_t image_size, const int* classes, size_t n_classes) {
  syncgan_status s;
  if (null_arg(kind, "kind", &s) || null_arg(out_dir, "out_dir", &s)) return s;
  if (n_classes > 0 && null_arg(classes, "classes", &s)) return s;
  return guarded([&] {
    const std::vector<int> cls(classes, classes + n_classes);
    syncgan::cmd::make_data(kind, source_root ? source_root : "data", out_dir, seed, n_pairs, image_size, cls);
  });
}

}  // extern "C"
