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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace syncgan {

inline constexpr char kCheckpointMagic[4] = {'S', 'Y', 'G', 'N'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

enum class DType : std::uint8_t { kF64 = 1, kU64 = 2, kU8 = 3 };

/// One named array. Exactly one payload vector is populated, per dtype.
struct CheckpointRecord {
  std::string name;
  DType dtype = DType::kF64;
  std::vector<std::uint64_t> dims;
  std::vector<double> f64;
  std::vector<std::uint64_t> u64;
  std::vector<std::uint8_t> u8;
};

/// Little-endian container:
///   "SYGN" | version u32 | config length u32 | config JSON bytes |
///   { name length u32 | name | dtype u8 | rank u32 | dims u64[rank] | payload }*
struct CheckpointFile {
  std::uint32_t version = kCheckpointVersion;
  std::string config_json;
  std::vector<CheckpointRecord> records;

  const CheckpointRecord* find(const std::string& name) const;
  const CheckpointRecord& at(const std::string& name) const;
};

void write_checkpoint_file(const std::filesystem::path& path, const CheckpointFile& file);
/// Throws DataError (bad magic, unsupported version, truncation).
CheckpointFile read_checkpoint_file(const std::filesystem::path& path);

}  // namespace syncgan
