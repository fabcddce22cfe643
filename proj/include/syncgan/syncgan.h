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

/* SyncGAN C interface.
 *
 * Every entry point returns a syncgan_status. On failure a one-line
 * diagnosis is available from syncgan_last_error() until the next call on
 * the same thread. Paths are UTF-8, NUL-terminated. */
#ifndef SYNCGAN_SYNCGAN_H_
#define SYNCGAN_SYNCGAN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SYNCGAN_API __declspec(dllexport)
#else
#define SYNCGAN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as process exit codes for the command-line tool. */
typedef enum syncgan_status {
  SYNCGAN_OK = 0,
  SYNCGAN_ERR_CONFIG = 1,  /* bad config file or argument */
  SYNCGAN_ERR_DATA = 2,    /* missing, unreadable or malformed data */
  SYNCGAN_ERR_NUMERIC = 3, /* a loss became NaN or infinite */
} syncgan_status;

typedef struct syncgan_model syncgan_model;

SYNCGAN_API const char* syncgan_version(void);
SYNCGAN_API const char* syncgan_last_error(void);

/* ---- models ------------------------------------------------------------ */

SYNCGAN_API syncgan_status syncgan_model_load(const char* checkpoint, syncgan_model** out);
SYNCGAN_API void syncgan_model_free(syncgan_model* model);
SYNCGAN_API size_t syncgan_model_latent_dim(const syncgan_model* model);
/* Height and width of one sample of modality 1 or 2. */
SYNCGAN_API syncgan_status syncgan_model_sample_shape(const syncgan_model* model, int modality, size_t* height,
                                                      size_t* width);
/* z holds n * latent_dim values; out receives n * height * width values. */
SYNCGAN_API syncgan_status syncgan_model_generate(const syncgan_model* model, const double* z, size_t n,
                                                  int modality, double* out);

/* ---- commands ----------------------------------------------------------
 *
 * data_root may be NULL. When set, a relative dataset path in a config is
 * resolved against it. A NULL seed keeps the config's seed. */

/* Trains from a JSON config; writes checkpoint.sygn, metrics.csv and
 * run_manifest.json into out_dir. An existing checkpoint in out_dir with the
 * same config is resumed. */
SYNCGAN_API syncgan_status syncgan_train(const char* config_path, const char* out_dir, const char* data_root,
                                         const uint64_t* seed);

/* Writes n sample pairs as pair_{i}_m{1,2}.pgm plus grid.pgm. */
SYNCGAN_API syncgan_status syncgan_generate(const char* checkpoint, size_t n, uint64_t seed, const char* out_dir);

/* Reads a one-image IDX file of modality `from`, inverts it and writes the
 * modality `to` rendering as a one-image IDX file. */
SYNCGAN_API syncgan_status syncgan_transfer(const char* checkpoint, const char* input_idx, const char* output_idx,
                                            int from, int to, uint64_t seed, double* final_mse);

/* Trains one classifier per modality on the dataset's concept labels and
 * writes sync_report.json and sync_report.csv. dataset may be NULL to use
 * the dataset named in the checkpoint's config. */
SYNCGAN_API syncgan_status syncgan_eval_sync(const char* checkpoint, const char* dataset, const char* data_root,
                                             size_t n_pairs, size_t classifier_epochs, uint64_t seed,
                                             const char* out_dir, double* sync_rate);

/* One training run per rate; writes sweep.csv and sweep.json. */
SYNCGAN_API syncgan_status syncgan_sweep(const char* config_path, const double* rates, size_t n_rates,
                                         size_t n_pairs, size_t classifier_epochs, const char* data_root,
                                         const uint64_t* seed, const char* out_dir);

/* kind is "mnist-pair", "rot90" or "instrument-surrogate". Source corpora
 * are read from source_root/mnist and source_root/fashion-mnist. n_pairs 0
 * selects the default size; classes may be NULL for all classes. */
SYNCGAN_API syncgan_status syncgan_make_data(const char* kind, const char* source_root, const char* out_dir,
                                             uint64_t seed, size_t n_pairs, size_t image_size, const int* classes,
                                             size_t n_classes);

#ifdef __cplusplus
}
#endif

#endif /* SYNCGAN_SYNCGAN_H_ */
