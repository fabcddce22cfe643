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

#include <gtest/gtest.h>

#include <fstream>
#include <iterator>

#include "checkpoint.hpp"
#include "config.hpp"
#include "data.hpp"
#include "tempdir.hpp"

namespace syncgan {
namespace {

using testing::TempDir;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(ConfigTest, DefaultHyperparameters) {
  const auto c = TrainConfig::from_json("{}");
  EXPECT_EQ(c.batch_size, 128u);
  EXPECT_EQ(c.latent_dim, 64u);
  EXPECT_DOUBLE_EQ(c.sync_pair_ratio, 0.5);
  EXPECT_DOUBLE_EQ(c.learning_rate, 2e-4);
  EXPECT_DOUBLE_EQ(c.beta1, 0.5);
  EXPECT_DOUBLE_EQ(c.beta2, 0.999);
  EXPECT_EQ(c.identical_pairs(), 64u);
}

TEST(ConfigTest, JsonRoundTrip) {
  TrainConfig c;
  c.batch_size = 64;
  c.seed = 12345678901234ULL;
  c.synchronizer_variant = SynchronizerVariant::kStyleTransfer;
  c.generator_hidden = {32, 16};
  c.dataset = "rot90";
  const auto back = TrainConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.seed, c.seed);
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(TrainConfig::from_json(R"({"batchsize": 2})"), ConfigError);
  EXPECT_THROW(TrainConfig::from_json(R"({"batch_size": 7})"), ConfigError);
  EXPECT_THROW(TrainConfig::from_json(R"({"sync_pair_ratio": 1.0})"), ConfigError);
  EXPECT_THROW(TrainConfig::from_json(R"({"sync_pair_ratio": 0.0})"), ConfigError);
  EXPECT_THROW(TrainConfig::from_json(R"({"batch_size": 10, "sync_pair_ratio": 0.25})"), ConfigError);
  EXPECT_THROW(TrainConfig::from_json(R"({"semi_rate": 1.5})"), ConfigError);
  EXPECT_THROW(TrainConfig::from_json(R"({"batch_size": "big"})"), ConfigError);
  EXPECT_THROW(TrainConfig::from_json(R"({"synchronizer_variant": "siamese"})"), ConfigError);
  EXPECT_THROW(TrainConfig::from_json("[1, 2]"), ConfigError);
  EXPECT_THROW(TrainConfig::from_json("{"), ConfigError);
  // Test-only override is not reachable from JSON.
  EXPECT_THROW(TrainConfig::from_json(R"({"allow_identical_only": true})"), ConfigError);
}

TEST(ConfigTest, IdenticalOnlyOverride) {
  TrainConfig c;
  c.sync_pair_ratio = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c.allow_identical_only = true;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.identical_pairs(), 128u);
}

TEST(ConfigTest, MissingFileNamesThePath) {
  try {
    TrainConfig::from_file("/nonexistent/cfg.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/cfg.json"), std::string::npos);
  }
}

TEST(ConfigTest, ModelSpecJsonRoundTrip) {
  TrainConfig c;
  const auto spec = c.model_spec({16, 16}, {64, 128});
  const auto back = model_spec_from_json(model_spec_to_json(spec));
  EXPECT_EQ(back.shapes[1], (SampleShape{64, 128}));
  EXPECT_EQ(back.generator_hidden, spec.generator_hidden);
  EXPECT_EQ(model_spec_to_json(back), model_spec_to_json(spec));
}

CheckpointFile sample_file() {
  CheckpointFile f;
  f.config_json = R"({"x": 1})";
  f.records.push_back({"w", DType::kF64, {2, 2}, {1.5, -2.0, 0.0, 3.25}, {}, {}});
  f.records.push_back({"step", DType::kU64, {1}, {}, {42}, {}});
  f.records.push_back({"rng", DType::kU8, {3}, {}, {}, {7, 8, 9}});
  return f;
}

TEST(CheckpointFileTest, RoundTripIsByteIdentical) {
  TempDir dir("ckpt");
  write_checkpoint_file(dir / "a.sygn", sample_file());
  const auto back = read_checkpoint_file(dir / "a.sygn");
  EXPECT_EQ(back.version, kCheckpointVersion);
  EXPECT_EQ(back.config_json, R"({"x": 1})");
  EXPECT_EQ(back.at("w").f64, (std::vector<double>{1.5, -2.0, 0.0, 3.25}));
  EXPECT_EQ(back.at("step").u64, (std::vector<std::uint64_t>{42}));
  EXPECT_EQ(back.at("rng").u8, (std::vector<std::uint8_t>{7, 8, 9}));
  EXPECT_EQ(back.find("nope"), nullptr);
  EXPECT_THROW(back.at("nope"), DataError);
  write_checkpoint_file(dir / "b.sygn", back);
  EXPECT_EQ(slurp(dir / "a.sygn"), slurp(dir / "b.sygn"));
}

TEST(CheckpointFileTest, LayoutIsLittleEndian) {
  TempDir dir("ckpt");
  write_checkpoint_file(dir / "a.sygn", sample_file());
  const auto bytes = slurp(dir / "a.sygn");
  EXPECT_EQ(bytes.substr(0, 4), "SYGN");
  EXPECT_EQ(bytes.substr(4, 4), std::string("\x01\x00\x00\x00", 4));
  EXPECT_EQ(bytes.substr(8, 4), std::string("\x08\x00\x00\x00", 4));
  EXPECT_EQ(bytes.substr(12, 8), R"({"x": 1})");
  // First record: name length 1, "w", dtype 1, rank 2.
  EXPECT_EQ(bytes.substr(20, 4), std::string("\x01\x00\x00\x00", 4));
  EXPECT_EQ(bytes[24], 'w');
  EXPECT_EQ(bytes[25], '\x01');
  EXPECT_EQ(bytes.substr(26, 4), std::string("\x02\x00\x00\x00", 4));
}

TEST(CheckpointFileTest, CorruptionDiagnoses) {
  TempDir dir("ckpt");
  write_checkpoint_file(dir / "a.sygn", sample_file());
  auto bytes = slurp(dir / "a.sygn");
  auto write = [&](const std::string& name, const std::string& b) {
    std::ofstream(dir / name, std::ios::binary) << b;
  };
  auto bad_version = bytes;
  bad_version[4] = 9;
  write("v.sygn", bad_version);
  try {
    read_checkpoint_file(dir / "v.sygn");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("format version 9"), std::string::npos);
  }
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  write("m.sygn", bad_magic);
  EXPECT_THROW(read_checkpoint_file(dir / "m.sygn"), DataError);
  write("t.sygn", bytes.substr(0, bytes.size() - 3));
  try {
    read_checkpoint_file(dir / "t.sygn");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.kind(), DataError::Kind::kTruncated);
  }
  EXPECT_THROW(read_checkpoint_file(dir / "none.sygn"), DataError);
}

}  // namespace
}  // namespace syncgan
