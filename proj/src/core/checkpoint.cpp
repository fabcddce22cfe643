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

#include "checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

#include "data.hpp"

namespace syncgan {

namespace fs = std::filesystem;

namespace {

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_le(out, bits);
}

class Cursor {
 public:
  Cursor(const std::vector<std::uint8_t>& bytes, const fs::path& path) : bytes_(bytes), path_(path) {}

  bool done() const { return pos_ == bytes_.size(); }

  const std::uint8_t* take(std::size_t n) {
    if (bytes_.size() - pos_ < n)
      throw DataError(DataError::Kind::kTruncated, "checkpoint: " + path_.string() + " is truncated at byte " +
                                                       std::to_string(pos_));
    const auto* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }

  template <typename T>
  T le() {
    const auto* p = take(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p[i]) << (8 * i);
    return v;
  }

  double f64() {
    const auto bits = le<std::uint64_t>();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

 private:
  const std::vector<std::uint8_t>& bytes_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

}  // namespace

const CheckpointRecord* CheckpointFile::find(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

const CheckpointRecord& CheckpointFile::at(const std::string& name) const {
  const auto* r = find(name);
  if (!r) throw DataError(DataError::Kind::kInvalid, "checkpoint: missing record '" + name + "'");
  return *r;
}

void write_checkpoint_file(const fs::path& path, const CheckpointFile& file) {
  std::vector<std::uint8_t> out(std::begin(kCheckpointMagic), std::end(kCheckpointMagic));
  put_le<std::uint32_t>(out, file.version);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(file.config_json.size()));
  out.insert(out.end(), file.config_json.begin(), file.config_json.end());
  for (const auto& r : file.records) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(r.name.size()));
    out.insert(out.end(), r.name.begin(), r.name.end());
    out.push_back(static_cast<std::uint8_t>(r.dtype));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(r.dims.size()));
    for (auto d : r.dims) put_le<std::uint64_t>(out, d);
    switch (r.dtype) {
      case DType::kF64:
        for (double v : r.f64) put_f64(out, v);
        break;
      case DType::kU64:
        for (auto v : r.u64) put_le<std::uint64_t>(out, v);
        break;
      case DType::kU8:
        out.insert(out.end(), r.u8.begin(), r.u8.end());
        break;
    }
  }
  const auto tmp = fs::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw DataError(DataError::Kind::kIo, "checkpoint: cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw DataError(DataError::Kind::kIo, "checkpoint: cannot move into " + path.string() + ": " + ec.message());
}

CheckpointFile read_checkpoint_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError(DataError::Kind::kIo, "checkpoint: cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  Cursor c(bytes, path);
  const auto* magic = c.take(4);
  if (std::memcmp(magic, kCheckpointMagic, 4) != 0)
    throw DataError(DataError::Kind::kBadMagic, "checkpoint: " + path.string() + " is not a SYGN checkpoint");
  CheckpointFile file;
  file.version = c.le<std::uint32_t>();
  if (file.version != kCheckpointVersion)
    throw DataError(DataError::Kind::kBadMagic, "checkpoint: format version " + std::to_string(file.version) +
                                                    " is not supported (expected " +
                                                    std::to_string(kCheckpointVersion) + ")");
  const auto cfg_len = c.le<std::uint32_t>();
  const auto* cfg = c.take(cfg_len);
  file.config_json.assign(reinterpret_cast<const char*>(cfg), cfg_len);
  while (!c.done()) {
    CheckpointRecord r;
    const auto name_len = c.le<std::uint32_t>();
    const auto* name = c.take(name_len);
    r.name.assign(reinterpret_cast<const char*>(name), name_len);
    const auto tag = c.le<std::uint8_t>();
    if (tag < 1 || tag > 3)
      throw DataError(DataError::Kind::kBadMagic, "checkpoint: record '" + r.name + "' has unknown dtype tag " +
                                                      std::to_string(tag));
    r.dtype = static_cast<DType>(tag);
    const auto rank = c.le<std::uint32_t>();
    std::uint64_t n = 1;
    for (std::uint32_t d = 0; d < rank; ++d) {
      r.dims.push_back(c.le<std::uint64_t>());
      n *= r.dims.back();
    }
    const std::size_t width = r.dtype == DType::kU8 ? 1 : 8;
    if (n > bytes.size() / width)
      throw DataError(DataError::Kind::kTruncated, "checkpoint: record '" + r.name + "' exceeds the file size");
    switch (r.dtype) {
      case DType::kF64:
        r.f64.resize(n);
        for (auto& v : r.f64) v = c.f64();
        break;
      case DType::kU64:
        r.u64.resize(n);
        for (auto& v : r.u64) v = c.le<std::uint64_t>();
        break;
      case DType::kU8: {
        const auto* p = c.take(n);
        r.u8.assign(p, p + n);
        break;
      }
    }
    file.records.push_back(std::move(r));
  }
  return file;
}

}  // namespace syncgan
