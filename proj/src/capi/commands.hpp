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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace syncgan::cmd {

namespace fs = std::filesystem;

/// Collects the provenance of one invocation and writes run_manifest.json.
class RunManifest {
 public:
  explicit RunManifest(std::string subcommand);
  void set_config(const nlohmann::json& config) { config_ = config; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_artifact(const fs::path& p) { artifacts_.push_back(p.filename().string()); }
  void write(const fs::path& dir) const;

 private:
  std::string subcommand_;
  nlohmann::json config_ = nlohmann::json::object();
  std::uint64_t seed_ = 0;
  std::vector<std::string> artifacts_;
  std::string started_;
};

/// Non-finite values outside the training loop (inversion).
class NumericAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kRunManifestFile = "run_manifest.json";

fs::path resolve_dataset(const std::string& dataset, const char* data_root);

void train(const fs::path& config_path, const fs::path& out_dir, const char* data_root,
           std::optional<std::uint64_t> seed);
void generate(const fs::path& checkpoint, std::size_t n, std::uint64_t seed, const fs::path& out_dir);
double transfer(const fs::path& checkpoint, const fs::path& input, const fs::path& output, int from, int to,
                std::uint64_t seed);
double eval_sync(const fs::path& checkpoint, const char* dataset, const char* data_root, std::size_t n_pairs,
                 std::size_t epochs, std::uint64_t seed, const fs::path& out_dir);
void sweep(const fs::path& config_path, const std::vector<double>& rates, std::size_t n_pairs, std::size_t epochs,
           const char* data_root, std::optional<std::uint64_t> seed, const fs::path& out_dir);
void make_data(const std::string& kind, const fs::path& source_root, const fs::path& out_dir, std::uint64_t seed,
               std::size_t n_pairs, std::size_t image_size, const std::vector<int>& classes);

}  // namespace syncgan::cmd
