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

#include "data.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <set>

#include "json.hpp"

namespace syncgan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GzCloser {
  void operator()(gzFile f) const {
    if (f) gzclose(f);
  }
};
using GzHandle = std::unique_ptr<std::remove_pointer_t<gzFile>, GzCloser>;

std::uint32_t read_be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

// Reads up to n bytes; returns how many were read.
std::size_t read_some(gzFile f, std::uint8_t* dst, std::size_t n, const fs::path& path) {
  std::size_t total = 0;
  while (total < n) {
    const auto chunk = static_cast<unsigned>(std::min<std::size_t>(n - total, 1u << 30));
    const int got = gzread(f, dst + total, chunk);
    if (got < 0) throw DataError(DataError::Kind::kIo, "idx: read error in " + path.string());
    if (got == 0) break;
    total += static_cast<std::size_t>(got);
  }
  return total;
}

std::vector<std::size_t> shuffled_range(std::size_t n, Rng& rng) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  rng.shuffle(std::span<std::size_t>(v));
  return v;
}

// Draws class members without replacement, reshuffling once exhausted.
class ClassCursor {
 public:
  explicit ClassCursor(std::vector<std::size_t> members) : members_(std::move(members)) {}
  std::size_t next(Rng& rng) {
    if (pos_ == 0) rng.shuffle(std::span<std::size_t>(members_));
    const auto v = members_[pos_];
    pos_ = (pos_ + 1) % members_.size();
    return v;
  }

 private:
  std::vector<std::size_t> members_;
  std::size_t pos_ = 0;
};

void check_unit_range(const Tensor& t, const char* what) {
  for (double v : t.data())
    if (!(v >= -1.0 && v <= 1.0))
      throw DataError(DataError::Kind::kInvalid, std::string(what) + ": value " + std::to_string(v) + " outside [-1, 1]");
}

IdxArray quantize(const Tensor& items, const SampleShape& shape) {
  IdxArray a;
  a.type_code = 0x08;
  a.dims = {static_cast<std::uint32_t>(items.dim(0)), static_cast<std::uint32_t>(shape.height),
            static_cast<std::uint32_t>(shape.width)};
  a.u8.reserve(items.numel());
  for (double v : items.data()) a.u8.push_back(unit_to_byte(v));
  return a;
}

Tensor dequantize(const IdxArray& a, SampleShape& shape, const fs::path& path) {
  if (a.type_code != 0x08 || a.dims.size() != 3)
    throw DataError(DataError::Kind::kBadMagic, "dataset: " + path.string() + " is not a rank-3 byte IDX array");
  shape = {a.dims[1], a.dims[2]};
  std::vector<double> v(a.u8.size());
  std::transform(a.u8.begin(), a.u8.end(), v.begin(), byte_to_unit);
  return Tensor({a.dims[0], shape.dim()}, std::move(v));
}

}  // namespace

// ---- IDX ------------------------------------------------------------------

std::size_t IdxArray::count() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

IdxArray read_idx(const fs::path& path) {
  GzHandle f(gzopen(path.string().c_str(), "rb"));
  if (!f) throw DataError(DataError::Kind::kIo, "idx: cannot open " + path.string());
  std::uint8_t header[4];
  if (read_some(f.get(), header, 4, path) != 4)
    throw DataError(DataError::Kind::kTruncated, "idx: " + path.string() + " is too short for a header");
  if (header[0] != 0 || header[1] != 0 || (header[2] != 0x08 && header[2] != 0x0C) || header[3] == 0)
    throw DataError(DataError::Kind::kBadMagic, "idx: bad magic in " + path.string());
  IdxArray a;
  a.type_code = header[2];
  std::vector<std::uint8_t> dims(4 * header[3]);
  if (read_some(f.get(), dims.data(), dims.size(), path) != dims.size())
    throw DataError(DataError::Kind::kTruncated, "idx: truncated dimension table in " + path.string());
  for (std::size_t d = 0; d < header[3]; ++d) a.dims.push_back(read_be32(dims.data() + 4 * d));
  const std::size_t n = a.count();
  const std::size_t width = a.type_code == 0x08 ? 1 : 4;
  std::vector<std::uint8_t> payload(n * width);
  const auto got = read_some(f.get(), payload.data(), payload.size(), path);
  if (got != payload.size())
    throw DataError(DataError::Kind::kTruncated, "idx: truncated payload in " + path.string() + " (expected " +
                                                     std::to_string(payload.size()) + " bytes, got " +
                                                     std::to_string(got) + ")");
  if (a.type_code == 0x08) {
    a.u8 = std::move(payload);
  } else {
    a.i32.resize(n);
    for (std::size_t i = 0; i < n; ++i) a.i32[i] = static_cast<std::int32_t>(read_be32(payload.data() + 4 * i));
  }
  return a;
}

void write_idx(const fs::path& path, const IdxArray& a) {
  std::vector<std::uint8_t> bytes{0, 0, a.type_code, static_cast<std::uint8_t>(a.dims.size())};
  for (auto d : a.dims) append_be32(bytes, d);
  if (a.type_code == 0x08) {
    if (a.u8.size() != a.count()) throw DataError(DataError::Kind::kInvalid, "idx: payload size mismatch");
    bytes.insert(bytes.end(), a.u8.begin(), a.u8.end());
  } else if (a.type_code == 0x0C) {
    if (a.i32.size() != a.count()) throw DataError(DataError::Kind::kInvalid, "idx: payload size mismatch");
    for (auto v : a.i32) append_be32(bytes, static_cast<std::uint32_t>(v));
  } else {
    throw DataError(DataError::Kind::kInvalid, "idx: unsupported type code");
  }
  if (path.extension() == ".gz") {
    GzHandle f(gzopen(path.string().c_str(), "wb"));
    if (!f || gzwrite(f.get(), bytes.data(), static_cast<unsigned>(bytes.size())) != static_cast<int>(bytes.size()))
      throw DataError(DataError::Kind::kIo, "idx: cannot write " + path.string());
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError(DataError::Kind::kIo, "idx: cannot write " + path.string());
}

RawImageCorpus load_idx(const fs::path& images_path, const fs::path& labels_path) {
  const auto images = read_idx(images_path);
  if (images.magic() != kIdxImagesMagic)
    throw DataError(DataError::Kind::kBadMagic, "idx: " + images_path.string() + " is not an image file (magic 0x803)");
  const auto labels = read_idx(labels_path);
  if (labels.magic() != kIdxLabelsMagic)
    throw DataError(DataError::Kind::kBadMagic, "idx: " + labels_path.string() + " is not a label file (magic 0x801)");
  if (images.dims[0] != labels.dims[0])
    throw DataError(DataError::Kind::kCountMismatch, "idx: " + std::to_string(images.dims[0]) + " images but " +
                                                         std::to_string(labels.dims[0]) + " labels");
  RawImageCorpus c;
  c.height = images.dims[1];
  c.width = images.dims[2];
  c.pixels = images.u8;
  c.labels.assign(labels.u8.begin(), labels.u8.end());
  return c;
}

RawImageCorpus load_idx_dir(const fs::path& dir) {
  for (const char* split : {"train", "t10k"}) {
    for (const char* ext : {"", ".gz"}) {
      const auto images = dir / (std::string(split) + "-images-idx3-ubyte" + ext);
      const auto labels = dir / (std::string(split) + "-labels-idx1-ubyte" + ext);
      if (fs::exists(images) && fs::exists(labels)) return load_idx(images, labels);
    }
  }
  throw DataError(DataError::Kind::kIo, "idx: no train/t10k image+label files under " + dir.string());
}

// ---- transforms -----------------------------------------------------------

std::vector<std::uint8_t> rotate90(std::span<const std::uint8_t> image, std::size_t size) {
  if (image.size() != size * size)
    throw DataError(DataError::Kind::kInvalid, "rotate90: image is not square " + std::to_string(size) + "x" +
                                                   std::to_string(size));
  std::vector<std::uint8_t> out(image.size());
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) out[r * size + c] = image[c * size + (size - 1 - r)];
  return out;
}

RawImageCorpus rotate90(const RawImageCorpus& corpus) {
  if (corpus.height != corpus.width)
    throw DataError(DataError::Kind::kInvalid, "rotate90: corpus images are " + std::to_string(corpus.height) + "x" +
                                                   std::to_string(corpus.width) + ", not square");
  RawImageCorpus out = corpus;
  for (std::size_t i = 0; i < corpus.count(); ++i) {
    auto r = rotate90(corpus.image(i), corpus.height);
    std::copy(r.begin(), r.end(), out.pixels.begin() + i * r.size());
  }
  return out;
}

std::vector<std::uint8_t> downsample(std::span<const std::uint8_t> image, std::size_t size, std::size_t target) {
  if (target == size) return {image.begin(), image.end()};
  const std::size_t padded = 2 * target;
  if (padded < size || (padded - size) % 2 != 0)
    throw DataError(DataError::Kind::kInvalid, "downsample: cannot pool " + std::to_string(size) + " to " +
                                                   std::to_string(target));
  const std::size_t pad = (padded - size) / 2;
  auto px = [&](std::size_t r, std::size_t c) -> unsigned {
    if (r < pad || c < pad || r >= pad + size || c >= pad + size) return 0;
    return image[(r - pad) * size + (c - pad)];
  };
  std::vector<std::uint8_t> out(target * target);
  for (std::size_t r = 0; r < target; ++r)
    for (std::size_t c = 0; c < target; ++c) {
      const unsigned s = px(2 * r, 2 * c) + px(2 * r, 2 * c + 1) + px(2 * r + 1, 2 * c) + px(2 * r + 1, 2 * c + 1);
      out[r * target + c] = static_cast<std::uint8_t>((s + 2) / 4);
    }
  return out;
}

RawImageCorpus downsample(const RawImageCorpus& corpus, std::size_t target) {
  if (corpus.height != corpus.width) throw DataError(DataError::Kind::kInvalid, "downsample: non-square corpus");
  RawImageCorpus out;
  out.height = out.width = target;
  out.labels = corpus.labels;
  out.pixels.reserve(corpus.count() * target * target);
  for (std::size_t i = 0; i < corpus.count(); ++i) {
    auto d = downsample(corpus.image(i), corpus.height, target);
    out.pixels.insert(out.pixels.end(), d.begin(), d.end());
  }
  return out;
}

RawImageCorpus subset_classes(const RawImageCorpus& corpus, const std::vector<int>& classes) {
  const std::set<int> keep(classes.begin(), classes.end());
  RawImageCorpus out;
  out.height = corpus.height;
  out.width = corpus.width;
  for (std::size_t i = 0; i < corpus.count(); ++i) {
    if (!keep.count(corpus.labels[i])) continue;
    auto img = corpus.image(i);
    out.pixels.insert(out.pixels.end(), img.begin(), img.end());
    out.labels.push_back(corpus.labels[i]);
  }
  return out;
}

std::uint8_t unit_to_byte(double v) {
  const double b = std::round((std::clamp(v, -1.0, 1.0) + 1.0) * 127.5);
  return static_cast<std::uint8_t>(b);
}

// ---- paired datasets ------------------------------------------------------

std::vector<std::size_t> PairedDataset::paired_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < paired_mask.size(); ++i)
    if (paired_mask[i]) out.push_back(i);
  return out;
}

std::size_t PairedDataset::num_classes() const {
  if (concept_label.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(concept_label.begin(), concept_label.end())) + 1;
}

void PairedDataset::validate() const {
  const auto n = size();
  if (items1.dim(0) != n || items2.dim(0) != n || paired_mask.size() != n ||
      (!concept_label.empty() && concept_label.size() != n))
    throw DataError(DataError::Kind::kCountMismatch, "dataset: inconsistent item counts");
  if (items1.dim(1) != shape1.dim() || items2.dim(1) != shape2.dim())
    throw DataError(DataError::Kind::kInvalid, "dataset: item dims do not match declared shapes");
  check_unit_range(items1, "dataset modality 1");
  check_unit_range(items2, "dataset modality 2");
}

ClassMap table1_class_map() {
  ClassMap m;
  for (int c = 0; c < 10; ++c) m[c] = c;
  return m;
}

const std::array<const char*, 10>& fashion_class_names() {
  static const std::array<const char*, 10> names{"T-shirt/top", "Trouser", "Pullover", "Dress", "Coat",
                                                 "Sandal",      "Shirt",   "Sneaker",  "Bag",   "Ankle boot"};
  return names;
}

PairedDataset build_paired_dataset(const RawImageCorpus& corpus1, const RawImageCorpus& corpus2,
                                   const ClassMap& class_map, std::size_t n_pairs, double semi_rate, Rng& rng) {
  if (class_map.empty()) throw DataError(DataError::Kind::kInvalid, "pairing: empty class map");
  std::map<int, std::vector<std::size_t>> members1, members2;
  for (std::size_t i = 0; i < corpus1.count(); ++i) members1[corpus1.labels[i]].push_back(i);
  for (std::size_t i = 0; i < corpus2.count(); ++i) members2[corpus2.labels[i]].push_back(i);

  std::vector<int> classes;
  std::map<int, ClassCursor> cursor1, cursor2;
  for (const auto& [c1, c2] : class_map) {
    if (members1[c1].empty())
      throw DataError(DataError::Kind::kInvalid, "pairing: class " + std::to_string(c1) + " has no items in corpus 1");
    if (members2[c2].empty())
      throw DataError(DataError::Kind::kInvalid, "pairing: class " + std::to_string(c2) + " has no items in corpus 2");
    classes.push_back(c1);
    cursor1.emplace(c1, ClassCursor(members1[c1]));
    cursor2.emplace(c2, ClassCursor(members2[c2]));
  }

  PairedDataset ds;
  ds.shape1 = {corpus1.height, corpus1.width};
  ds.shape2 = {corpus2.height, corpus2.width};
  const auto d1 = ds.shape1.dim(), d2 = ds.shape2.dim();
  std::vector<double> v1(n_pairs * d1), v2(n_pairs * d2);
  for (std::size_t p = 0; p < n_pairs; ++p) {
    const int c = classes[rng.index(classes.size())];
    const auto i1 = cursor1.at(c).next(rng);
    const auto i2 = cursor2.at(class_map.at(c)).next(rng);
    auto img1 = corpus1.image(i1);
    auto img2 = corpus2.image(i2);
    std::transform(img1.begin(), img1.end(), v1.begin() + p * d1, byte_to_unit);
    std::transform(img2.begin(), img2.end(), v2.begin() + p * d2, byte_to_unit);
    ds.pair_id.push_back(p);
    ds.concept_label.push_back(c);
    ds.sources.push_back({static_cast<std::int32_t>(i1), static_cast<std::int32_t>(i2)});
  }
  ds.items1 = Tensor({n_pairs, d1}, std::move(v1));
  ds.items2 = Tensor({n_pairs, d2}, std::move(v2));
  assign_paired_mask(ds, semi_rate, rng);
  return ds;
}

void assign_paired_mask(PairedDataset& ds, double semi_rate, Rng& rng) {
  if (!(semi_rate >= 0.0 && semi_rate <= 1.0))
    throw DataError(DataError::Kind::kInvalid, "semi_rate must lie in [0, 1], got " + std::to_string(semi_rate));
  const auto n = ds.size();
  const auto n_paired = static_cast<std::size_t>(std::llround(semi_rate * static_cast<double>(n)));
  ds.paired_mask.assign(n, 0);
  if (n_paired == n) {
    std::fill(ds.paired_mask.begin(), ds.paired_mask.end(), 1);
    return;
  }
  const auto order = shuffled_range(n, rng);
  for (std::size_t k = 0; k < n_paired; ++k) ds.paired_mask[order[k]] = 1;
}

namespace {

RealPairBatch gather_pairs(const PairedDataset& ds, std::vector<std::size_t> i, std::vector<std::size_t> j) {
  RealPairBatch b;
  b.x1 = gather_rows(ds.items1, i);
  b.x2 = gather_rows(ds.items2, j);
  b.i = std::move(i);
  b.j = std::move(j);
  return b;
}

}  // namespace

RealPairBatch sample_sync_real_pairs(const PairedDataset& ds, std::size_t batch, Rng& rng) {
  const auto pool = ds.paired_indices();
  if (pool.empty()) throw DataError(DataError::Kind::kInvalid, "sync pairs: no paired entries");
  std::vector<std::size_t> idx(batch);
  for (auto& k : idx) k = pool[rng.index(pool.size())];
  return gather_pairs(ds, idx, idx);
}

RealPairBatch sample_async_real_pairs(const PairedDataset& ds, std::size_t batch, Rng& rng) {
  const auto pool = ds.paired_indices();
  if (pool.size() < 2)
    throw DataError(DataError::Kind::kInvalid, "async pairs: need at least 2 paired entries, have " +
                                                   std::to_string(pool.size()));
  std::vector<std::size_t> i(batch), j(batch);
  for (std::size_t k = 0; k < batch; ++k) {
    const auto a = rng.index(pool.size());
    auto b = rng.index(pool.size() - 1);
    if (b >= a) ++b;
    i[k] = pool[a];
    j[k] = pool[b];
  }
  return gather_pairs(ds, std::move(i), std::move(j));
}

RealPairBatch sample_unpaired(const PairedDataset& ds, std::size_t batch, Rng& rng) {
  if (ds.size() == 0) throw DataError(DataError::Kind::kInvalid, "unpaired batch: empty dataset");
  std::vector<std::size_t> i(batch), j(batch);
  for (auto& k : i) k = rng.index(ds.size());
  for (auto& k : j) k = rng.index(ds.size());
  return gather_pairs(ds, std::move(i), std::move(j));
}

void save_dataset(const fs::path& dir, const PairedDataset& ds, const std::string& manifest_json) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError(DataError::Kind::kIo, "dataset: cannot create " + dir.string() + ": " + ec.message());
  write_idx(dir / "modality1.idx", quantize(ds.items1, ds.shape1));
  write_idx(dir / "modality2.idx", quantize(ds.items2, ds.shape2));
  if (!ds.concept_label.empty()) {
    IdxArray labels{0x08, {static_cast<std::uint32_t>(ds.size())}, {}, {}};
    for (int c : ds.concept_label) labels.u8.push_back(static_cast<std::uint8_t>(c));
    write_idx(dir / "labels.idx", labels);
  }
  if (!ds.sources.empty()) {
    IdxArray src{0x0C, {static_cast<std::uint32_t>(ds.size()), 2}, {}, {}};
    for (const auto& s : ds.sources) src.i32.insert(src.i32.end(), s.begin(), s.end());
    write_idx(dir / "sources.idx", src);
  }
  json manifest = manifest_json.empty() ? json::object() : json::parse(manifest_json);
  manifest["n_pairs"] = ds.size();
  manifest["shape1"] = {ds.shape1.height, ds.shape1.width};
  manifest["shape2"] = {ds.shape2.height, ds.shape2.width};
  manifest["num_classes"] = ds.num_classes();
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  if (!out) throw DataError(DataError::Kind::kIo, "dataset: cannot write manifest in " + dir.string());
}

PairedDataset load_dataset(const fs::path& dir) {
  if (!fs::exists(dir / "manifest.json"))
    throw DataError(DataError::Kind::kIo, "dataset: no manifest.json in " + dir.string());
  PairedDataset ds;
  ds.items1 = dequantize(read_idx(dir / "modality1.idx"), ds.shape1, dir / "modality1.idx");
  ds.items2 = dequantize(read_idx(dir / "modality2.idx"), ds.shape2, dir / "modality2.idx");
  const auto n = ds.items1.dim(0);
  if (ds.items2.dim(0) != n)
    throw DataError(DataError::Kind::kCountMismatch, "dataset: modality files disagree on item count");
  for (std::size_t i = 0; i < n; ++i) ds.pair_id.push_back(i);
  if (fs::exists(dir / "labels.idx")) {
    const auto labels = read_idx(dir / "labels.idx");
    if (labels.count() != n) throw DataError(DataError::Kind::kCountMismatch, "dataset: label count mismatch");
    ds.concept_label.assign(labels.u8.begin(), labels.u8.end());
  }
  if (fs::exists(dir / "sources.idx")) {
    const auto src = read_idx(dir / "sources.idx");
    if (src.type_code != 0x0C || src.count() != 2 * n)
      throw DataError(DataError::Kind::kCountMismatch, "dataset: source table mismatch");
    for (std::size_t i = 0; i < n; ++i) ds.sources.push_back({src.i32[2 * i], src.i32[2 * i + 1]});
  }
  ds.paired_mask.assign(n, 1);
  ds.validate();
  return ds;
}

// ---- audio ----------------------------------------------------------------

Tensor audio_to_2d(std::span<const double> wave, std::size_t offset) {
  if (wave.size() < kAudioClip || offset > wave.size() - kAudioClip)
    throw DataError(DataError::Kind::kInvalid, "audio_to_2d: need 512 samples from offset " + std::to_string(offset) +
                                                   ", wave has " + std::to_string(wave.size()));
  std::array<double, kAudioColumns> x{};
  double peak = 0.0;
  for (std::size_t t = 0; t < kAudioColumns; ++t) {
    x[t] = wave[offset + t * kAudioStride];
    peak = std::max(peak, std::abs(x[t]));
  }
  if (peak > 0.0)
    for (auto& v : x) v /= peak;
  std::vector<double> img(kAudioRows * kAudioColumns, -1.0);
  for (std::size_t t = 0; t < kAudioColumns; ++t) {
    const auto row = static_cast<std::size_t>(std::floor((x[t] + 1.0) / 2.0 * (kAudioRows - 1) + 0.5));
    img[std::min(row, kAudioRows - 1) * kAudioColumns + t] = 1.0;
  }
  return Tensor({kAudioRows, kAudioColumns}, std::move(img));
}

// ---- instrument surrogate -------------------------------------------------

const std::array<double, kSurrogateKinds>& surrogate_frequencies() {
  static const std::array<double, kSurrogateKinds> f{125.0, 175.0, 250.0, 350.0, 500.0};
  return f;
}

const std::array<const char*, kSurrogateKinds>& surrogate_names() {
  static const std::array<const char*, kSurrogateKinds> n{"violin", "trumpet", "tuba", "clarinet", "sax"};
  return n;
}

namespace {

bool glyph_pixel(std::size_t kind, int r, int c) {
  const double y = r - 7.5, x = c - 7.5;
  switch (kind) {
    case 0: return c >= 6 && c <= 9 && r >= 2 && r <= 13;  // vertical bar
    case 1: return r >= 6 && r <= 9 && c >= 2 && c <= 13;  // horizontal bar
    case 2: {                                              // ring
      const double d = std::sqrt(x * x + y * y);
      return d >= 3.5 && d <= 6.0;
    }
    case 3: return r >= 2 && r <= 13 && c >= 2 && c <= 13 && (std::abs(r - c) <= 1 || std::abs(r + c - 15) <= 1);
    case 4: return r >= 4 && r <= 11 && c >= 4 && c <= 11;  // filled square
    default: return false;
  }
}

}  // namespace

SurrogateSample synth_instrument_surrogate(std::size_t kind, Rng& rng) {
  if (kind >= kSurrogateKinds)
    throw DataError(DataError::Kind::kInvalid, "surrogate: kind " + std::to_string(kind) + " out of range");
  const int dr = static_cast<int>(rng.index(3)) - 1;
  const int dc = static_cast<int>(rng.index(3)) - 1;
  constexpr auto n = kSurrogateImageSize;
  std::vector<double> img(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const bool on = glyph_pixel(kind, static_cast<int>(r) - dr, static_cast<int>(c) - dc);
      img[r * n + c] = std::clamp((on ? 0.9 : -0.9) + rng.normal(0.0, 0.1), -1.0, 1.0);
    }

  SurrogateSample s;
  s.image = Tensor({n, n}, std::move(img));
  const double freq = surrogate_frequencies()[kind];
  const double amplitude = rng.uniform(0.6, 1.0);
  s.clip_offset = rng.index(kSurrogateWaveLength - kAudioClip + 1);
  // Phase is pinned at the clip start up to a small jitter. A uniformly random
  // phase leaves a dense net nothing stable to latch onto in the raster.
  const double omega = 2.0 * std::numbers::pi * freq / kSurrogateSampleRate;
  const double phase = rng.uniform(0.0, kSurrogatePhaseJitter) - omega * static_cast<double>(s.clip_offset);
  s.wave.resize(kSurrogateWaveLength);
  for (std::size_t t = 0; t < s.wave.size(); ++t)
    s.wave[t] = amplitude * std::sin(omega * static_cast<double>(t) + phase) + rng.normal(0.0, 0.05);
  return s;
}

PairedDataset build_instrument_dataset(std::size_t per_kind, double semi_rate, Rng& rng) {
  PairedDataset ds;
  ds.shape1 = {kSurrogateImageSize, kSurrogateImageSize};
  ds.shape2 = {kAudioRows, kAudioColumns};
  const auto n = per_kind * kSurrogateKinds;
  std::vector<double> v1, v2;
  v1.reserve(n * ds.shape1.dim());
  v2.reserve(n * ds.shape2.dim());
  for (std::size_t p = 0; p < n; ++p) {
    const auto kind = p % kSurrogateKinds;
    const auto s = synth_instrument_surrogate(kind, rng);
    const auto audio = audio_to_2d(s.wave, s.clip_offset);
    v1.insert(v1.end(), s.image.data().begin(), s.image.data().end());
    v2.insert(v2.end(), audio.data().begin(), audio.data().end());
    ds.pair_id.push_back(p);
    ds.concept_label.push_back(static_cast<int>(kind));
  }
  ds.items1 = Tensor({n, ds.shape1.dim()}, std::move(v1));
  ds.items2 = Tensor({n, ds.shape2.dim()}, std::move(v2));
  assign_paired_mask(ds, semi_rate, rng);
  return ds;
}

}  // namespace syncgan
