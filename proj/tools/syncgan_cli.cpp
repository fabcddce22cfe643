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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "syncgan/syncgan.h"

namespace {

int report(syncgan_status s) {
  if (s != SYNCGAN_OK) std::fprintf(stderr, "syncgan: error: %s\n", syncgan_last_error());
  return static_cast<int>(s);
}

const char* opt_cstr(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SyncGAN: synchronized GAN pairs for cross-modal and cross-domain generation"};
  app.set_version_flag("--version", std::string(syncgan_version()));
  app.require_subcommand(1);

  const char* env_root = std::getenv("SYNCGAN_DATA_DIR");
  std::string data_root = env_root ? env_root : "";
  std::string config, out, ckpt, input, dataset, kind, rates_text, classes_text;
  std::optional<std::uint64_t> seed;
  std::size_t n_generate = 16, n_eval = 1000, n_sweep = 1000, n_make = 0;
  std::size_t epochs = 10, image_size = 16;
  int from = 1, to = 2;

  auto add_data_root = [&](CLI::App* sub) {
    sub->add_option("--data", data_root, "Corpus root; defaults to $SYNCGAN_DATA_DIR");
  };

  auto* train = app.add_subcommand("train", "Train a model from a JSON config");
  train->add_option("--config", config, "Config file")->required();
  train->add_option("--out", out, "Run directory")->required();
  train->add_option("--seed", seed, "Override the config seed");
  add_data_root(train);

  auto* generate = app.add_subcommand("generate", "Write generated pairs as PGM images");
  generate->add_option("--ckpt", ckpt, "Checkpoint")->required();
  generate->add_option("--n", n_generate, "Number of pairs")->capture_default_str();
  generate->add_option("--seed", seed, "Latent seed");
  generate->add_option("--out", out, "Output directory")->required();

  auto* transfer = app.add_subcommand("transfer", "Invert one image and render it in the other modality");
  transfer->add_option("--ckpt", ckpt, "Checkpoint")->required();
  transfer->add_option("--in", input, "One-image IDX input")->required();
  transfer->add_option("--out", out, "One-image IDX output")->required();
  transfer->add_option("--from", from, "Source modality")->check(CLI::Range(1, 2))->capture_default_str();
  transfer->add_option("--to", to, "Target modality")->check(CLI::Range(1, 2))->capture_default_str();
  transfer->add_option("--seed", seed, "Restart seed");

  auto* eval = app.add_subcommand("eval-sync", "Measure the synchronous rate of a trained model");
  eval->add_option("--ckpt", ckpt, "Checkpoint")->required();
  eval->add_option("--n", n_eval, "Generated pairs")->capture_default_str();
  eval->add_option("--seed", seed, "Seed");
  eval->add_option("--out", out, "Report directory")->required();
  eval->add_option("--dataset", dataset, "Labelled dataset; defaults to the one the model was trained on");
  eval->add_option("--epochs", epochs, "Classifier epochs")->capture_default_str();
  add_data_root(eval);

  auto* sweep = app.add_subcommand("sweep", "Train and evaluate one model per semi-supervised rate");
  sweep->add_option("--config", config, "Config file")->required();
  sweep->add_option("--rates", rates_text, "Comma-separated rates in (0, 1]")->required();
  sweep->add_option("--n", n_sweep, "Generated pairs per rate")->capture_default_str();
  sweep->add_option("--seed", seed, "Override the config seed");
  sweep->add_option("--out", out, "Output directory")->required();
  sweep->add_option("--epochs", epochs, "Classifier epochs")->capture_default_str();
  add_data_root(sweep);

  auto* make = app.add_subcommand("make-data", "Build a paired dataset");
  make->add_option("kind", kind, "mnist-pair, rot90 or instrument-surrogate")->required();
  make->add_option("--out", out, "Dataset directory")->required();
  make->add_option("--seed", seed, "Sampling seed");
  make->add_option("--n", n_make, "Pairs (0 selects the default)")->capture_default_str();
  make->add_option("--size", image_size, "Image side after pooling")->capture_default_str();
  make->add_option("--classes", classes_text, "Comma-separated class subset");
  add_data_root(make);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return SYNCGAN_ERR_CONFIG;
  }

  const std::uint64_t seed_or_zero = seed.value_or(0);
  const std::uint64_t* seed_ptr = seed ? &*seed : nullptr;

  if (*train) return report(syncgan_train(config.c_str(), out.c_str(), opt_cstr(data_root), seed_ptr));
  if (*generate) return report(syncgan_generate(ckpt.c_str(), n_generate, seed_or_zero, out.c_str()));
  if (*transfer) {
    double mse = 0.0;
    const auto s = syncgan_transfer(ckpt.c_str(), input.c_str(), out.c_str(), from, to, seed_or_zero, &mse);
    if (s == SYNCGAN_OK) std::printf("final_mse %.9g\n", mse);
    return report(s);
  }
  if (*eval) {
    double rate = 0.0;
    const auto s = syncgan_eval_sync(ckpt.c_str(), opt_cstr(dataset), opt_cstr(data_root), n_eval, epochs, seed_or_zero,
                                     out.c_str(), &rate);
    if (s == SYNCGAN_OK) std::printf("sync_rate %.6f\n", rate);
    return report(s);
  }

  // Comma lists.
  auto split = [](const std::string& text, auto convert) {
    std::vector<decltype(convert(std::string()))> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto next = std::min(text.find(',', pos), text.size());
      if (next > pos) out.push_back(convert(text.substr(pos, next - pos)));
      pos = next + 1;
    }
    return out;
  };
  try {
    if (*sweep) {
      const auto rates = split(rates_text, [](const std::string& s) { return std::stod(s); });
      return report(syncgan_sweep(config.c_str(), rates.data(), rates.size(), n_sweep, epochs, opt_cstr(data_root),
                                  seed_ptr, out.c_str()));
    }
    const auto classes = split(classes_text, [](const std::string& s) { return std::stoi(s); });
    return report(syncgan_make_data(kind.c_str(), data_root.empty() ? "data" : data_root.c_str(), out.c_str(),
                                    seed_or_zero, n_make, image_size, classes.data(), classes.size()));
  } catch (const std::logic_error&) {
    std::fprintf(stderr, "syncgan: error: malformed number in a comma-separated list\n");
    return SYNCGAN_ERR_CONFIG;
  }
}
