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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace syncgan {

using nlohmann::json;

namespace {

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: field '") + key + "' has the wrong type: " + e.what());
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size == 0 || batch_size % 2 != 0)
    throw ConfigError("config: batch_size must be a positive even number, got " + std::to_string(batch_size));
  if (latent_dim == 0) throw ConfigError("config: latent_dim must be positive");
  const bool ratio_ok = allow_identical_only ? (sync_pair_ratio > 0.0 && sync_pair_ratio <= 1.0)
                                             : (sync_pair_ratio > 0.0 && sync_pair_ratio < 1.0);
  if (!ratio_ok)
    throw ConfigError("config: sync_pair_ratio must lie in (0, 1), got " + std::to_string(sync_pair_ratio) +
                      " (training on identical pairs only collapses modes)");
  const double split = sync_pair_ratio * static_cast<double>(batch_size);
  if (std::abs(split - std::round(split)) > 1e-9)
    throw ConfigError("config: batch_size * sync_pair_ratio must be an integer");
  if (!(semi_rate >= 0.0 && semi_rate <= 1.0)) throw ConfigError("config: semi_rate must lie in [0, 1]");
  if (!(learning_rate > 0.0)) throw ConfigError("config: learning_rate must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0))
    throw ConfigError("config: beta1 and beta2 must lie in [0, 1)");
  if (image_size == 0) throw ConfigError("config: image_size must be positive");
  if (sync_feature_dim == 0 || sync_hidden == 0) throw ConfigError("config: synchronizer widths must be positive");
  for (auto h : generator_hidden)
    if (h == 0) throw ConfigError("config: generator_hidden entries must be positive");
  for (auto h : discriminator_hidden)
    if (h == 0) throw ConfigError("config: discriminator_hidden entries must be positive");
}

std::size_t TrainConfig::identical_pairs() const {
  return static_cast<std::size_t>(std::llround(sync_pair_ratio * static_cast<double>(batch_size)));
}

std::string TrainConfig::to_json() const {
  json j;
  j["batch_size"] = batch_size;
  j["latent_dim"] = latent_dim;
  j["sync_pair_ratio"] = sync_pair_ratio;
  j["semi_rate"] = semi_rate;
  j["learning_rate"] = learning_rate;
  j["beta1"] = beta1;
  j["beta2"] = beta2;
  j["iterations"] = iterations;
  j["seed"] = seed;
  j["synchronizer_variant"] = variant_name(synchronizer_variant);
  j["image_size"] = image_size;
  j["generator_hidden"] = generator_hidden;
  j["discriminator_hidden"] = discriminator_hidden;
  j["sync_feature_dim"] = sync_feature_dim;
  j["sync_hidden"] = sync_hidden;
  j["checkpoint_every"] = checkpoint_every;
  j["dataset"] = dataset;
  j["log_wall_time"] = log_wall_time;
  return j.dump();
}

TrainConfig TrainConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  static const std::set<std::string> known{
      "batch_size",   "latent_dim",       "sync_pair_ratio",      "semi_rate",        "learning_rate",
      "beta1",        "beta2",            "iterations",           "seed",             "synchronizer_variant",
      "image_size",   "generator_hidden", "discriminator_hidden", "sync_feature_dim", "sync_hidden",
      "checkpoint_every", "dataset",      "log_wall_time"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");

  TrainConfig c;
  read_field(j, "batch_size", c.batch_size);
  read_field(j, "latent_dim", c.latent_dim);
  read_field(j, "sync_pair_ratio", c.sync_pair_ratio);
  read_field(j, "semi_rate", c.semi_rate);
  read_field(j, "learning_rate", c.learning_rate);
  read_field(j, "beta1", c.beta1);
  read_field(j, "beta2", c.beta2);
  read_field(j, "iterations", c.iterations);
  read_field(j, "seed", c.seed);
  std::string variant = variant_name(c.synchronizer_variant);
  read_field(j, "synchronizer_variant", variant);
  try {
    c.synchronizer_variant = parse_variant(variant);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  read_field(j, "image_size", c.image_size);
  read_field(j, "generator_hidden", c.generator_hidden);
  read_field(j, "discriminator_hidden", c.discriminator_hidden);
  read_field(j, "sync_feature_dim", c.sync_feature_dim);
  read_field(j, "sync_hidden", c.sync_hidden);
  read_field(j, "checkpoint_every", c.checkpoint_every);
  read_field(j, "dataset", c.dataset);
  read_field(j, "log_wall_time", c.log_wall_time);
  c.validate();
  return c;
}

TrainConfig TrainConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

ModelSpec TrainConfig::model_spec(const SampleShape& shape1, const SampleShape& shape2) const {
  ModelSpec s;
  s.latent_dim = latent_dim;
  s.shapes = {shape1, shape2};
  s.variant = synchronizer_variant;
  s.generator_hidden = generator_hidden;
  s.discriminator_hidden = discriminator_hidden;
  s.sync_feature_dim = sync_feature_dim;
  s.sync_hidden = sync_hidden;
  return s;
}

std::string model_spec_to_json(const ModelSpec& spec) {
  json j;
  j["latent_dim"] = spec.latent_dim;
  j["shape1"] = {spec.shapes[0].height, spec.shapes[0].width};
  j["shape2"] = {spec.shapes[1].height, spec.shapes[1].width};
  j["synchronizer_variant"] = variant_name(spec.variant);
  j["generator_hidden"] = spec.generator_hidden;
  j["discriminator_hidden"] = spec.discriminator_hidden;
  j["sync_feature_dim"] = spec.sync_feature_dim;
  j["sync_hidden"] = spec.sync_hidden;
  return j.dump();
}

ModelSpec model_spec_from_json(const std::string& text) {
  try {
    const auto j = json::parse(text);
    ModelSpec s;
    s.latent_dim = j.at("latent_dim").get<std::size_t>();
    const auto a = j.at("shape1").get<std::vector<std::size_t>>();
    const auto b = j.at("shape2").get<std::vector<std::size_t>>();
    if (a.size() != 2 || b.size() != 2) throw ConfigError("model spec: shapes must have two entries");
    s.shapes = {SampleShape{a[0], a[1]}, SampleShape{b[0], b[1]}};
    s.variant = parse_variant(j.at("synchronizer_variant").get<std::string>());
    s.generator_hidden = j.at("generator_hidden").get<std::vector<std::size_t>>();
    s.discriminator_hidden = j.at("discriminator_hidden").get<std::vector<std::size_t>>();
    s.sync_feature_dim = j.at("sync_feature_dim").get<std::size_t>();
    s.sync_hidden = j.at("sync_hidden").get<std::size_t>();
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model spec: ") + e.what());
  }
}

}  // namespace syncgan
