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

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "tempdir.hpp"

namespace {

namespace fs = std::filesystem;
using syncgan::testing::TempDir;

struct Run {
  int code = -1;
  std::string output;  // stdout and stderr interleaved
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + SYNCGAN_CLI_PATH + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[512];
  while (std::fgets(buf, sizeof buf, p) != nullptr) r.output += buf;
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string be32(std::uint32_t v) {
  return {static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8), static_cast<char>(v)};
}

// 20 images, labels 0..9 twice, under <dir>/t10k-*.
void write_fixture_corpus(const fs::path& dir, int shade) {
  fs::create_directories(dir);
  std::string images = be32(0x803) + be32(20) + be32(28) + be32(28);
  std::string labels = be32(0x801) + be32(20);
  for (int i = 0; i < 20; ++i) {
    images += std::string(28 * 28, static_cast<char>(shade + i));
    labels += static_cast<char>(i % 10);
  }
  write_file(dir / "t10k-images-idx3-ubyte", images);
  write_file(dir / "t10k-labels-idx1-ubyte", labels);
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(std::ifstream(p)); }

std::size_t count_ext(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ext;
  return n;
}

const char* kTinyModel = R"("latent_dim": 4, "generator_hidden": [16], "discriminator_hidden": [16],
  "sync_feature_dim": 8, "sync_hidden": 8, "synchronizer_variant": "style-transfer")";

// A trained toy checkpoint shared by the generate tests.
class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("cli");
    const auto root = dir_->path();
    const auto made = run("make-data rot90 --classes 0,1 --n 40 --seed 2 --out " + (root / "ds").string(),
                          std::string("SYNCGAN_DATA_DIR=") + SYNCGAN_TEST_DATA_ROOT);
    ASSERT_EQ(made.code, 0) << made.output;
    write_file(root / "cfg.json", std::string(R"({"batch_size": 8, "iterations": 10, "seed": 1, "dataset": "ds", )") +
                                      kTinyModel + "}");
    const auto t0 = std::chrono::steady_clock::now();
    const auto trained = run("train --config " + (root / "cfg.json").string() + " --out " + (root / "run").string(),
                             "SYNCGAN_DATA_DIR=" + root.string());
    train_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ASSERT_EQ(trained.code, 0) << trained.output;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static fs::path root() { return dir_->path(); }
  static std::string ckpt() { return (root() / "run" / "checkpoint.sygn").string(); }

  static TempDir* dir_;
  static double train_seconds_;
};

TempDir* CliTest::dir_ = nullptr;
double CliTest::train_seconds_ = 0.0;

TEST_F(CliTest, SmokeTrainWritesOneRowPerIteration) {
  EXPECT_LT(train_seconds_, 30.0);
  std::ifstream in(root() / "run" / "metrics.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "iter,L_D1,L_D2,L_G1_Dis,L_G2_Dis,L_S,L_G_Sync,wall_ms");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 10);
  const auto manifest = read_json(root() / "run" / "run_manifest.json");
  EXPECT_EQ(manifest["subcommand"], "train");
}

TEST_F(CliTest, GenerateZeroWritesOnlyTheManifest) {
  const auto out = root() / "gen0";
  const auto r = run("generate --ckpt " + ckpt() + " --n 0 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.output;
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(out)) {
    ++entries;
    EXPECT_EQ(e.path().filename(), "run_manifest.json");
  }
  EXPECT_EQ(entries, 1u);
}

TEST_F(CliTest, GenerateSixteenPairs) {
  const auto out = root() / "gen16";
  const auto r = run("generate --ckpt " + ckpt() + " --n 16 --seed 4 --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(count_ext(out, ".pgm"), 33u);  // 16 pairs plus the grid
  EXPECT_TRUE(fs::exists(out / "grid.pgm"));
  EXPECT_TRUE(fs::exists(out / "pair_15_m2.pgm"));
}

TEST_F(CliTest, MissingConfigExitsOneAndNamesThePath) {
  const auto missing = root() / "absent.json";
  const auto r = run("train --config " + missing.string() + " --out " + (root() / "x").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find(missing.string()), std::string::npos) << r.output;
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("train --out x").code, 1);
  EXPECT_EQ(run("transfer --ckpt a --in b --out c --from 3").code, 1);
  EXPECT_EQ(run("make-data bogus --out " + (root() / "b").string()).code, 1);
}

TEST_F(CliTest, CorruptCheckpointExitsTwo) {
  const auto bad = root() / "old.sygn";
  write_file(bad, std::string("SYGN\x09\x00\x00\x00", 8) + "rest");
  const auto r = run("generate --ckpt " + bad.string() + " --n 1 --out " + (root() / "g").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("format version 9"), std::string::npos) << r.output;
}

TEST_F(CliTest, DivergentTrainingExitsThree) {
  write_file(root() / "hot.json", std::string(R"({"batch_size": 8, "iterations": 50, "seed": 1, "dataset": "ds",
    "learning_rate": 1e300, )") + kTinyModel + "}");
  const auto r = run("train --config " + (root() / "hot.json").string() + " --out " + (root() / "hot").string(),
                     "SYNCGAN_DATA_DIR=" + root().string());
  EXPECT_EQ(r.code, 3) << r.output;
}

TEST(CliMakeData, InstrumentSurrogateDefaults) {
  TempDir dir("surrogate");
  const auto r = run("make-data instrument-surrogate --out " + (dir.path() / "ds").string());
  ASSERT_EQ(r.code, 0) << r.output;
  const auto m = read_json(dir.path() / "ds" / "manifest.json");
  EXPECT_EQ(m["n_pairs"], 1250);
  EXPECT_EQ(m["num_classes"], 5);
}

TEST(CliMakeData, MnistPairNamesFashionClasses) {
  TempDir dir("mnistpair");
  write_fixture_corpus(dir.path() / "src" / "mnist", 10);
  write_fixture_corpus(dir.path() / "src" / "fashion-mnist", 100);
  const auto r = run("make-data mnist-pair --n 20 --data " + (dir.path() / "src").string() + " --out " +
                     (dir.path() / "ds").string());
  ASSERT_EQ(r.code, 0) << r.output;
  const auto m = read_json(dir.path() / "ds" / "manifest.json");
  EXPECT_EQ(m["class_map"]["C0"], "T-shirt/top");
  EXPECT_EQ(m["class_map"]["C9"], "Ankle boot");
  EXPECT_EQ(m["n_pairs"], 20);
}

TEST(CliMakeData, MissingCorpusExitsTwo) {
  TempDir dir("nocorpus");
  const auto r = run("make-data rot90 --data " + dir.path().string() + " --out " + (dir.path() / "ds").string());
  EXPECT_EQ(r.code, 2) << r.output;
}

}  // namespace
