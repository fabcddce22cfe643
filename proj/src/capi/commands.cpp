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

#include "commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "checkpoint.hpp"
#include "data.hpp"
#include "evaluation.hpp"
#include "image_io.hpp"
#include "inversion.hpp"
#include "trainer.hpp"
#include "syncgan/syncgan.h"

namespace syncgan::cmd {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultImagePairs = 30000;
constexpr std::size_t kDefaultSurrogatePerKind = 250;

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw DataError(DataError::Kind::kIo, "cannot create directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError(DataError::Kind::kIo, "cannot write " + path.string());
}

TrainConfig load_config(const fs::path& path, std::optional<std::uint64_t> seed) {
  auto cfg = TrainConfig::from_file(path);
  if (seed) cfg.seed = *seed;
  return cfg;
}

// Configs match for resumption when they differ at most in the budget and
// checkpoint cadence.
bool resumable(const TrainConfig& a, const TrainConfig& b) {
  auto ja = json::parse(a.to_json()), jb = json::parse(b.to_json());
  for (auto* j : {&ja, &jb}) {
    j->erase("iterations");
    j->erase("checkpoint_every");
  }
  return ja == jb;
}

PairedDataset load_training_data(const TrainConfig& cfg, const char* data_root) {
  auto ds = load_dataset(resolve_dataset(cfg.dataset, data_root));
  apply_semi_rate(ds, cfg);
  return ds;
}

std::pair<Classifier, Classifier> fit_classifiers(const PairedDataset& ds, std::size_t epochs, std::uint64_t seed) {
  Rng rng(seed);
  auto c1 = train_classifier(modality_set(ds, 1), epochs, rng);
  auto c2 = train_classifier(modality_set(ds, 2), epochs, rng);
  return {std::move(c1), std::move(c2)};
}

Tensor read_single_image(const fs::path& path, const SampleShape& shape) {
  const auto idx = read_idx(path);
  if (idx.type_code != 0x08 || idx.dims.size() != 3)
    throw DataError(DataError::Kind::kBadMagic, "transfer: " + path.string() + " is not an IDX image file");
  if (idx.dims[0] != 1)
    throw DataError(DataError::Kind::kCountMismatch, "transfer: " + path.string() + " must hold exactly one image");
  if (idx.dims[1] != shape.height || idx.dims[2] != shape.width)
    throw DataError(DataError::Kind::kInvalid, "transfer: image is " + std::to_string(idx.dims[1]) + "x" +
                                                   std::to_string(idx.dims[2]) + ", model expects " +
                                                   std::to_string(shape.height) + "x" + std::to_string(shape.width));
  std::vector<double> v;
  for (auto b : idx.u8) v.push_back(byte_to_unit(b));
  return Tensor({1, shape.dim()}, std::move(v));
}

}  // namespace

RunManifest::RunManifest(std::string subcommand) : subcommand_(std::move(subcommand)), started_(utc_now()) {}

void RunManifest::write(const fs::path& dir) const {
  json j;
  j["subcommand"] = subcommand_;
  j["config"] = config_;
  j["seed"] = seed_;
  j["artifacts"] = artifacts_;
  j["tool_version"] = syncgan_version();
  j["started"] = started_;
  j["finished"] = utc_now();
  write_text(dir / kRunManifestFile, j.dump(2) + "\n");
}

fs::path resolve_dataset(const std::string& dataset, const char* data_root) {
  if (dataset.empty()) throw ConfigError("config: dataset is not set");
  fs::path p(dataset);
  if (p.is_relative() && data_root != nullptr && *data_root != '\0') p = fs::path(data_root) / p;
  return p;
}

void train(const fs::path& config_path, const fs::path& out_dir, const char* data_root,
           std::optional<std::uint64_t> seed) {
  const auto cfg = load_config(config_path, seed);
  const auto ds = load_training_data(cfg, data_root);
  ensure_dir(out_dir);
  RunManifest manifest("train");
  manifest.set_config(json::parse(cfg.to_json()));
  manifest.set_seed(cfg.seed);

  const auto ckpt = out_dir / kCheckpointFile;
  std::optional<Trainer> trainer;
  if (fs::exists(ckpt)) {
    auto previous = Trainer::load_checkpoint(ckpt);
    if (resumable(previous.config(), cfg) && previous.iteration() <= cfg.iterations) {
      previous.config().iterations = cfg.iterations;
      previous.config().checkpoint_every = cfg.checkpoint_every;
      trainer.emplace(std::move(previous));
    }
  }
  if (!trainer) trainer.emplace(Trainer::create(cfg, ds));
  syncgan::train(*trainer, ds, out_dir);
  manifest.add_artifact(ckpt);
  manifest.add_artifact(out_dir / kMetricsFile);
  manifest.write(out_dir);
}

void generate(const fs::path& checkpoint, std::size_t n, std::uint64_t seed, const fs::path& out_dir) {
  const auto model = load_model(checkpoint);
  ensure_dir(out_dir);
  RunManifest manifest("generate");
  manifest.set_config({{"checkpoint", checkpoint.string()}, {"n", n}});
  manifest.set_seed(seed);
  if (n > 0) {
    const auto& spec = model.spec();
    Rng rng(seed);
    const Tensor z({n, spec.latent_dim}, rng.normal_vector(n * spec.latent_dim));
    NoGradGuard no_grad;
    std::vector<GrayImage> col1, col2;
    for (int m : {1, 2}) {
      const auto x = model.generate(z, m);
      const auto d = spec.data_dim(m);
      for (std::size_t i = 0; i < n; ++i) {
        auto g = to_gray(x.data().subspan(i * d, d), spec.shapes[m - 1]);
        const auto path = out_dir / ("pair_" + std::to_string(i) + "_m" + std::to_string(m) + ".pgm");
        write_pgm(path, g);
        manifest.add_artifact(path);
        (m == 1 ? col1 : col2).push_back(std::move(g));
      }
    }
    write_pgm(out_dir / "grid.pgm", contact_sheet(col1, col2));
    manifest.add_artifact(out_dir / "grid.pgm");
  }
  manifest.write(out_dir);
}

double transfer(const fs::path& checkpoint, const fs::path& input, const fs::path& output, int from, int to,
                std::uint64_t seed) {
  if (from == to) throw std::invalid_argument("transfer: --from and --to must differ");
  check_modality(from);
  check_modality(to);
  const auto model = load_model(checkpoint);
  const auto& spec = model.spec();
  const auto x = read_single_image(input, spec.shapes[from - 1]);
  Rng rng(seed);
  InversionResult details;
  const auto y = syncgan::transfer(model, x, from, to, InversionConfig{}, rng, &details);
  if (details.all_failed) throw NumericAbort("transfer: every inversion restart diverged");

  const auto& shape = spec.shapes[to - 1];
  IdxArray out;
  out.type_code = 0x08;
  out.dims = {1, static_cast<std::uint32_t>(shape.height), static_cast<std::uint32_t>(shape.width)};
  for (double v : y.data()) out.u8.push_back(unit_to_byte(v));
  if (output.has_parent_path()) ensure_dir(output.parent_path());
  write_idx(output, out);
  return details.final_mse;
}

double eval_sync(const fs::path& checkpoint, const char* dataset, const char* data_root, std::size_t n_pairs,
                 std::size_t epochs, std::uint64_t seed, const fs::path& out_dir) {
  if (n_pairs < 1) throw std::invalid_argument("eval-sync: --n must be at least 1");
  const auto model = load_model(checkpoint);
  const auto train_cfg = json::parse(read_checkpoint_file(checkpoint).config_json).at("train_config");
  std::string ds_name = dataset != nullptr ? dataset : "";
  if (ds_name.empty()) ds_name = train_cfg.at("dataset").get<std::string>();
  const auto ds = load_dataset(resolve_dataset(ds_name, data_root));
  auto [clf1, clf2] = fit_classifiers(ds, epochs, seed);
  Rng rng(seed + 1);
  auto report = sync_rate(model, clf1, clf2, n_pairs, rng);
  report.seed = seed;
  report.semi_rate = train_cfg.at("semi_rate").get<double>();
  report.batch_size = train_cfg.at("batch_size").get<std::size_t>();
  ensure_dir(out_dir);
  write_text(out_dir / "sync_report.json", report.to_json() + "\n");
  write_text(out_dir / "sync_report.csv", report.to_csv());
  RunManifest manifest("eval-sync");
  manifest.set_config({{"checkpoint", checkpoint.string()}, {"dataset", ds_name}, {"n", n_pairs}, {"epochs", epochs}});
  manifest.set_seed(seed);
  manifest.add_artifact(out_dir / "sync_report.json");
  manifest.add_artifact(out_dir / "sync_report.csv");
  manifest.write(out_dir);
  return report.sync_rate;
}

void sweep(const fs::path& config_path, const std::vector<double>& rates, std::size_t n_pairs, std::size_t epochs,
           const char* data_root, std::optional<std::uint64_t> seed, const fs::path& out_dir) {
  if (rates.empty()) throw std::invalid_argument("sweep: --rates is empty");
  if (n_pairs < 1) throw std::invalid_argument("sweep: --n must be at least 1");
  const auto cfg = load_config(config_path, seed);
  const auto ds = load_dataset(resolve_dataset(cfg.dataset, data_root));
  auto [clf1, clf2] = fit_classifiers(ds, epochs, cfg.seed);
  const auto rows = semi_supervised_sweep(rates, cfg, ds, clf1, clf2, n_pairs);
  ensure_dir(out_dir);
  write_text(out_dir / "sweep.csv", sweep_csv(rows));
  json j = json::array();
  for (const auto& r : rows) {
    json row{{"semi_rate", r.rate}};
    row["sync_rate"] = r.sync_rate ? json(*r.sync_rate) : json(nullptr);
    if (!r.error.empty()) row["error"] = r.error;
    j.push_back(row);
  }
  json doc{{"rows", j},
           {"classifier1_heldout_accuracy", clf1.heldout_accuracy},
           {"classifier2_heldout_accuracy", clf2.heldout_accuracy}};
  write_text(out_dir / "sweep.json", doc.dump(2) + "\n");
  RunManifest manifest("sweep");
  auto cj = json::parse(cfg.to_json());
  cj["rates"] = rates;
  cj["n_pairs"] = n_pairs;
  manifest.set_config(cj);
  manifest.set_seed(cfg.seed);
  manifest.add_artifact(out_dir / "sweep.csv");
  manifest.add_artifact(out_dir / "sweep.json");
  manifest.write(out_dir);
}

void make_data(const std::string& kind, const fs::path& source_root, const fs::path& out_dir, std::uint64_t seed,
               std::size_t n_pairs, std::size_t image_size, const std::vector<int>& classes) {
  Rng rng(seed);
  PairedDataset ds;
  json extra{{"kind", kind}, {"seed", seed}};
  auto prepare = [&](const fs::path& dir) {
    auto corpus = load_idx_dir(dir);
    if (!classes.empty()) corpus = subset_classes(corpus, classes);
    return downsample(corpus, image_size);
  };
  auto restrict_map = [&](ClassMap map) {
    if (classes.empty()) return map;
    ClassMap out;
    for (int c : classes) {
      if (!map.count(c)) throw std::invalid_argument("make-data: class " + std::to_string(c) + " is out of range");
      out[c] = map.at(c);
    }
    return out;
  };

  if (kind == "mnist-pair" || kind == "rot90") {
    if (image_size == 0) throw std::invalid_argument("make-data: image size must be positive");
    if (n_pairs == 0) n_pairs = kDefaultImagePairs;
    const auto map = restrict_map(table1_class_map());
    const auto c1 = prepare(source_root / "mnist");
    const auto c2 = kind == "rot90" ? rotate90(c1) : prepare(source_root / "fashion-mnist");
    ds = build_paired_dataset(c1, c2, map, n_pairs, 1.0, rng);
    json names = json::object();
    for (const auto& [a, b] : map)
      names["C" + std::to_string(a)] = kind == "rot90" ? std::to_string(b) + " (rotated)"
                                                       : std::string(fashion_class_names()[b]);
    extra["class_map"] = names;
    extra["image_size"] = image_size;
  } else if (kind == "instrument-surrogate") {
    if (n_pairs == 0) n_pairs = kSurrogateKinds * kDefaultSurrogatePerKind;
    if (n_pairs % kSurrogateKinds != 0)
      throw std::invalid_argument("make-data: instrument-surrogate pair count must be a multiple of 5");
    ds = build_instrument_dataset(n_pairs / kSurrogateKinds, 1.0, rng);
    json table = json::object();
    for (std::size_t k = 0; k < kSurrogateKinds; ++k)
      table[surrogate_names()[k]] = {{"label", k}, {"frequency_hz", surrogate_frequencies()[k]}};
    extra["kinds"] = table;
    extra["sample_rate_hz"] = kSurrogateSampleRate;
  } else {
    throw std::invalid_argument("make-data: unknown kind '" + kind +
                                "' (expected mnist-pair, rot90 or instrument-surrogate)");
  }
  ensure_dir(out_dir);
  save_dataset(out_dir, ds, extra.dump());
  RunManifest manifest("make-data");
  manifest.set_config({{"kind", kind}, {"n_pairs", n_pairs}, {"image_size", image_size}, {"classes", classes}});
  manifest.set_seed(seed);
  for (const char* f : {"modality1.idx", "modality2.idx", "labels.idx", "sources.idx", "manifest.json"})
    manifest.add_artifact(out_dir / f);
  manifest.write(out_dir);
}

}  // namespace syncgan::cmd
