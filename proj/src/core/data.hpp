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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "rng.hpp"
#include "tensor.hpp"

namespace syncgan {

/// Data and file-format failures. The kind distinguishes the causes a caller
/// may want to report differently.
class DataError : public std::runtime_error {
 public:
  enum class Kind { kIo, kBadMagic, kTruncated, kCountMismatch, kInvalid };
  DataError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// ---- IDX files ------------------------------------------------------------

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

/// A decoded IDX array. Only the element types this project writes are
/// supported: unsigned byte (0x08) and signed 32-bit int (0x0C).
struct IdxArray {
  std::uint8_t type_code = 0x08;
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> u8;
  std::vector<std::int32_t> i32;

  std::size_t count() const;
  std::uint32_t magic() const { return (static_cast<std::uint32_t>(type_code) << 8) | dims.size(); }
};

/// Reads a big-endian IDX file; gzip-compressed files are detected and
/// inflated transparently.
IdxArray read_idx(const std::filesystem::path& path);
/// Writes an IDX file, gzip-compressed when the path ends in ".gz".
void write_idx(const std::filesystem::path& path, const IdxArray& array);

struct RawImageCorpus {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> pixels;  // count * height * width, row-major
  std::vector<int> labels;

  std::size_t count() const { return labels.size(); }
  std::span<const std::uint8_t> image(std::size_t i) const {
    return std::span<const std::uint8_t>(pixels).subspan(i * height * width, height * width);
  }
};

/// Loads an images/labels IDX pair (magic 0x803 / 0x801).
RawImageCorpus load_idx(const std::filesystem::path& images_path, const std::filesystem::path& labels_path);

/// Locates the train (or, failing that, t10k) split of an MNIST-layout
/// corpus directory, accepting plain or .gz files.
RawImageCorpus load_idx_dir(const std::filesystem::path& dir);

// ---- image transforms -----------------------------------------------------

/// Counter-clockwise quarter turn of a square image:
/// out(r, c) = in(c, size - 1 - r).
std::vector<std::uint8_t> rotate90(std::span<const std::uint8_t> image, std::size_t size);
RawImageCorpus rotate90(const RawImageCorpus& corpus);

/// Zero-pads to 2*target on each axis and 2x2 average-pools down to
/// target x target, rounding to the nearest byte. target == size is identity.
std::vector<std::uint8_t> downsample(std::span<const std::uint8_t> image, std::size_t size, std::size_t target);
RawImageCorpus downsample(const RawImageCorpus& corpus, std::size_t target);
RawImageCorpus subset_classes(const RawImageCorpus& corpus, const std::vector<int>& classes);

inline double byte_to_unit(std::uint8_t b) { return static_cast<double>(b) / 127.5 - 1.0; }
std::uint8_t unit_to_byte(double v);

// ---- paired datasets ------------------------------------------------------

/// Row i of items1 and row i of items2 are synchronous (same pair id).
struct PairedDataset {
  Tensor items1;  // [N x d1], values in [-1, 1]
  Tensor items2;  // [N x d2]
  SampleShape shape1;
  SampleShape shape2;
  std::vector<std::size_t> pair_id;
  std::vector<int> concept_label;  // optional; evaluation only
  std::vector<std::uint8_t> paired_mask;
  std::vector<std::array<std::int32_t, 2>> sources;  // optional provenance

  std::size_t size() const { return pair_id.size(); }
  std::vector<std::size_t> paired_indices() const;
  std::size_t num_classes() const;
  void validate() const;
};

/// Class index -> class index in the second corpus.
using ClassMap = std::map<int, int>;

/// Identity map over MNIST/Fashion-MNIST class indices, and the Fashion-MNIST
/// names of each class.
ClassMap table1_class_map();
const std::array<const char*, 10>& fashion_class_names();

/// Draws each pair by sampling a class uniformly, then one item of that class
/// from each corpus. Items within a class are drawn without replacement until
/// the class is exhausted, after which the class is reshuffled and reused.
PairedDataset build_paired_dataset(const RawImageCorpus& corpus1, const RawImageCorpus& corpus2,
                                   const ClassMap& class_map, std::size_t n_pairs, double semi_rate, Rng& rng);

/// Marks round(semi_rate * N) uniformly chosen entries as paired.
void assign_paired_mask(PairedDataset& ds, double semi_rate, Rng& rng);

struct RealPairBatch {
  Tensor x1;
  Tensor x2;
  std::vector<std::size_t> i;
  std::vector<std::size_t> j;
};

/// Synchronous pairs (i == j) drawn uniformly from paired entries.
RealPairBatch sample_sync_real_pairs(const PairedDataset& ds, std::size_t batch, Rng& rng);
/// Asynchronous pairs (i != j) drawn uniformly from paired entries. Pairs may
/// still share a concept label.
RealPairBatch sample_async_real_pairs(const PairedDataset& ds, std::size_t batch, Rng& rng);
/// Independent draws over the full dataset, ignoring pairing.
RealPairBatch sample_unpaired(const PairedDataset& ds, std::size_t batch, Rng& rng);

/// Writes modality1.idx, modality2.idx, labels.idx, sources.idx and
/// manifest.json into `dir`; `manifest` is merged into the written manifest.
void save_dataset(const std::filesystem::path& dir, const PairedDataset& ds, const std::string& manifest_json);
/// Loads a dataset written by save_dataset. The paired mask is all true.
PairedDataset load_dataset(const std::filesystem::path& dir);

// ---- audio ----------------------------------------------------------------

inline constexpr std::size_t kAudioClip = 512;
inline constexpr std::size_t kAudioStride = 4;
inline constexpr std::size_t kAudioColumns = kAudioClip / kAudioStride;  // 128
inline constexpr std::size_t kAudioRows = 64;

/// Clips 512 samples starting at `offset`, decimates by 4 to 128 values,
/// peak-normalizes to [-1, 1] and rasterizes to a [64 x 128] image with +1 at
/// row round_half_up((X(t) + 1) / 2 * 63) of column t and -1 elsewhere.
Tensor audio_to_2d(std::span<const double> wave, std::size_t offset = 0);

// ---- instrument surrogate -------------------------------------------------

inline constexpr std::size_t kSurrogateKinds = 5;
inline constexpr std::size_t kSurrogateImageSize = 16;
inline constexpr std::size_t kSurrogateWaveLength = 1024;
inline constexpr double kSurrogateSampleRate = 8000.0;
inline constexpr double kSurrogatePhaseJitter = 0.5;  // radians, at clip start
const std::array<double, kSurrogateKinds>& surrogate_frequencies();
const std::array<const char*, kSurrogateKinds>& surrogate_names();

struct SurrogateSample {
  Tensor image;              // [16 x 16]
  std::vector<double> wave;  // kSurrogateWaveLength samples
  std::size_t clip_offset = 0;
};

SurrogateSample synth_instrument_surrogate(std::size_t kind, Rng& rng);

/// per_kind pairs of each kind; modality 1 is the glyph image, modality 2 the
/// rendered audio clip.
PairedDataset build_instrument_dataset(std::size_t per_kind, double semi_rate, Rng& rng);

}  // namespace syncgan
