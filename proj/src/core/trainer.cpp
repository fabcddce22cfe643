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

#include "trainer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "checkpoint.hpp"
#include "json.hpp"

namespace syncgan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TapeReset {
  ~TapeReset() { ComputationTape::current().clear(); }
};

// Objective over (positive, negative) score batches; the negative batch is
// absent when every pair in the batch is synchronous.
LossValue pair_objective(const Tensor& positive, const Tensor& negative, LossPhase phase) {
  if (negative.defined())
    return phase == LossPhase::kSync ? synchronizer_loss(positive, negative) : generator_sync_loss(positive, negative);
  return {generator_adv_loss(positive).value, phase};
}

void check_finite(const LossValue& loss) {
  if (!std::isfinite(loss.item()))
    throw NumericError(loss.phase, std::string("non-finite loss in phase ") + phase_name(loss.phase));
}

std::vector<Tensor> parameters_of(const SyncGanModel& model, std::initializer_list<Network> nets) {
  std::vector<Tensor> out;
  for (auto n : nets)
    for (auto& p : network_parameters(model, n)) out.push_back(p);
  return out;
}

std::string checkpoint_header(const TrainConfig& cfg, const ModelSpec& spec) {
  json j;
  j["train_config"] = json::parse(cfg.to_json());
  j["model_spec"] = json::parse(model_spec_to_json(spec));
  return j.dump();
}

CheckpointRecord f64_record(std::string name, const Tensor& t) {
  CheckpointRecord r;
  r.name = std::move(name);
  r.dtype = DType::kF64;
  for (auto d : t.shape()) r.dims.push_back(d);
  r.f64.assign(t.data().begin(), t.data().end());
  return r;
}

void restore_parameters(const SyncGanModel& model, const CheckpointFile& file) {
  for (auto& [name, tensor] : model.named_parameters()) {
    const auto& r = file.at(name);
    Tensor t = tensor;
    if (r.dtype != DType::kF64 || r.f64.size() != t.numel())
      throw DataError(DataError::Kind::kInvalid, "checkpoint: record '" + name + "' does not match the model shape");
    std::copy(r.f64.begin(), r.f64.end(), t.mutable_data().begin());
  }
}

std::pair<TrainConfig, ModelSpec> parse_header(const std::string& text) {
  try {
    const auto j = json::parse(text);
    auto cfg_json = j.at("train_config");
    const double ratio = cfg_json.at("sync_pair_ratio").get<double>();
    TrainConfig cfg;
    if (ratio >= 1.0) {
      // Written by a run with the test-only identical-pairs override.
      cfg_json["sync_pair_ratio"] = 0.5;
      cfg = TrainConfig::from_json(cfg_json.dump());
      cfg.sync_pair_ratio = ratio;
      cfg.allow_identical_only = true;
    } else {
      cfg = TrainConfig::from_json(cfg_json.dump());
    }
    return {cfg, model_spec_from_json(j.at("model_spec").dump())};
  } catch (const json::exception& e) {
    throw DataError(DataError::Kind::kInvalid, std::string("checkpoint: malformed config header: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(DataError::Kind::kInvalid, std::string("checkpoint: invalid config header: ") + e.what());
  }
}

}  // namespace

const char* network_name(Network n) {
  switch (n) {
    case Network::kS: return "s";
    case Network::kD1: return "d1";
    case Network::kD2: return "d2";
    case Network::kG1: return "g1";
    case Network::kG2: return "g2";
  }
  return "?";
}

std::vector<Tensor> network_parameters(const SyncGanModel& model, Network n) {
  switch (n) {
    case Network::kS: return model.synchronizer().parameters();
    case Network::kD1: return model.discriminator(1).parameters();
    case Network::kD2: return model.discriminator(2).parameters();
    case Network::kG1: return model.generator(1).parameters();
    case Network::kG2: return model.generator(2).parameters();
  }
  return {};
}

LatentPairs sample_latent_pairs(std::size_t batch, std::size_t latent_dim, double ratio, Rng& rng) {
  const double split = ratio * static_cast<double>(batch);
  if (!(ratio >= 0.0 && ratio <= 1.0) || std::abs(split - std::round(split)) > 1e-9)
    throw std::invalid_argument("sample_latent_pairs: batch " + std::to_string(batch) + " * ratio " +
                                std::to_string(ratio) + " is not an integral split");
  const auto same = static_cast<std::size_t>(std::llround(split));
  std::vector<double> z1(batch * latent_dim), z2(batch * latent_dim);
  LatentPairs out;
  out.sync_flags.assign(batch, 0);
  for (std::size_t r = 0; r < batch; ++r) {
    for (std::size_t k = 0; k < latent_dim; ++k) z1[r * latent_dim + k] = rng.normal();
    if (r < same) {
      std::copy_n(z1.begin() + r * latent_dim, latent_dim, z2.begin() + r * latent_dim);
      out.sync_flags[r] = 1;
    } else {
      for (std::size_t k = 0; k < latent_dim; ++k) z2[r * latent_dim + k] = rng.normal();
    }
  }
  out.z1 = Tensor({batch, latent_dim}, std::move(z1));
  out.z2 = Tensor({batch, latent_dim}, std::move(z2));
  return out;
}

Trainer::Trainer(SyncGanModel model, TrainConfig config)
    : model_(std::move(model)), config_(std::move(config)), rng_(config_.seed) {
  config_.validate();
  const AdamOptions opts{config_.learning_rate, config_.beta1, config_.beta2, 1e-8};
  for (auto& o : optimizers_) o = AdamState(opts);
}

Trainer Trainer::create(const TrainConfig& config, const PairedDataset& ds) {
  config.validate();
  if (ds.shape1.height == ds.shape1.width && ds.shape1.height != config.image_size)
    throw ConfigError("config: image_size " + std::to_string(config.image_size) + " does not match the dataset's " +
                      std::to_string(ds.shape1.height) + "x" + std::to_string(ds.shape1.width) + " images");
  Rng init(config.seed);
  auto model = SyncGanModel::create(config.model_spec(ds.shape1, ds.shape2), init);
  Trainer t(std::move(model), config);
  t.rng_ = init;
  return t;
}

IterationMetrics Trainer::compute_gradients(const PairedDataset& ds) {
  TapeReset reset;
  for (auto n : kAllNetworks)
    for (auto& p : network_parameters(model_, n)) p.zero_grad();

  const auto batch = config_.batch_size;
  const auto latent = config_.latent_dim;
  IterationMetrics m;

  // Data distribution phase: unpaired real batches and independent noise.
  const Tensor z1(Shape{batch, latent}, rng_.normal_vector(batch * latent));
  const Tensor z2(Shape{batch, latent}, rng_.normal_vector(batch * latent));
  const auto real = sample_unpaired(ds, batch, rng_);
  const Tensor fake1 = model_.generate(z1, 1);
  const Tensor fake2 = model_.generate(z2, 2);
  const Tensor d1_fake = model_.discriminate(fake1, 1);
  const Tensor d2_fake = model_.discriminate(fake2, 2);
  const auto loss_d1 = discriminator_loss(model_.discriminate(real.x1, 1), d1_fake, LossPhase::kDisc1);
  const auto loss_d2 = discriminator_loss(model_.discriminate(real.x2, 2), d2_fake, LossPhase::kDisc2);
  const auto loss_g1 = generator_adv_loss(d1_fake, LossPhase::kGen1Adv);
  const auto loss_g2 = generator_adv_loss(d2_fake, LossPhase::kGen2Adv);
  for (const auto* l : {&loss_d1, &loss_d2, &loss_g1, &loss_g2}) check_finite(*l);

  Tensor critic = add(loss_d1.value, loss_d2.value);
  Tensor gen = add(loss_g1.value, loss_g2.value);
  m.loss_d1 = loss_d1.item();
  m.loss_d2 = loss_d2.item();
  m.loss_g1_adv = loss_g1.item();
  m.loss_g2_adv = loss_g2.item();

  // Synchronous phase: paired real data and shared/distinct noise.
  if (ds.paired_indices().size() >= 2) {
    const auto same = config_.identical_pairs();
    const auto distinct = batch - same;
    const auto sync_real = sample_sync_real_pairs(ds, same, rng_);
    Tensor s_real_sync = model_.sync_score(sync_real.x1, sync_real.x2);
    Tensor s_real_async;
    if (distinct > 0) {
      const auto async_real = sample_async_real_pairs(ds, distinct, rng_);
      s_real_async = model_.sync_score(async_real.x1, async_real.x2);
    }
    const auto loss_s = pair_objective(s_real_sync, s_real_async, LossPhase::kSync);

    const auto latents = sample_latent_pairs(batch, latent, config_.sync_pair_ratio, rng_);
    const Tensor s_fake = model_.sync_score(model_.generate(latents.z1, 1), model_.generate(latents.z2, 2));
    const Tensor s_same = slice(s_fake, 0, 0, same);
    const Tensor s_diff = distinct > 0 ? slice(s_fake, 0, same, batch) : Tensor();
    const auto loss_gs = pair_objective(s_same, s_diff, LossPhase::kGenSync);
    check_finite(loss_s);
    check_finite(loss_gs);

    critic = add(critic, loss_s.value);
    gen = add(gen, loss_gs.value);
    m.loss_sync = loss_s.item();
    m.loss_gen_sync = loss_gs.item();
  } else {
    m.sync_skipped = true;
  }

  // Every objective is maximized: descend its negation.
  BackwardOptions critic_pass{true, parameters_of(model_, {Network::kS, Network::kD1, Network::kD2}), -1.0};
  backward(critic, critic_pass);
  BackwardOptions gen_pass{false, parameters_of(model_, {Network::kG1, Network::kG2}), -1.0};
  backward(gen, gen_pass);
  m.iteration = iteration_ + 1;
  return m;
}

void Trainer::apply_update(Network n) {
  auto params = network_parameters(model_, n);
  adam_step(params, optimizers_[static_cast<int>(n)]);
}

IterationMetrics Trainer::step(const PairedDataset& ds) {
  const auto start = std::chrono::steady_clock::now();
  auto m = compute_gradients(ds);
  for (auto n : kAllNetworks) {
    if (n == Network::kS && m.sync_skipped) continue;
    apply_update(n);
  }
  ++iteration_;
  if (config_.log_wall_time)
    m.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return m;
}

void Trainer::save_checkpoint(const fs::path& path) const {
  CheckpointFile file;
  file.config_json = checkpoint_header(config_, model_.spec());
  for (const auto& [name, t] : model_.named_parameters()) file.records.push_back(f64_record(name, t));
  for (auto n : kAllNetworks) {
    const auto& opt = optimizers_[static_cast<int>(n)];
    const std::string prefix = std::string("adam.") + network_name(n);
    CheckpointRecord step;
    step.name = prefix + ".step";
    step.dtype = DType::kU64;
    step.dims = {1};
    step.u64 = {opt.step};
    file.records.push_back(std::move(step));
    for (std::size_t i = 0; i < opt.first_moment.size(); ++i) {
      CheckpointRecord m{prefix + ".m." + std::to_string(i), DType::kF64, {opt.first_moment[i].size()},
                         opt.first_moment[i], {}, {}};
      CheckpointRecord v{prefix + ".v." + std::to_string(i), DType::kF64, {opt.second_moment[i].size()},
                         opt.second_moment[i], {}, {}};
      file.records.push_back(std::move(m));
      file.records.push_back(std::move(v));
    }
  }
  file.records.push_back({"trainer.iteration", DType::kU64, {1}, {}, {iteration_}, {}});
  const auto state = rng_.save_state();
  file.records.push_back({"trainer.rng", DType::kU8, {state.size()}, {}, {}, {state.begin(), state.end()}});
  write_checkpoint_file(path, file);
}

Trainer Trainer::load_checkpoint(const fs::path& path) {
  const auto file = read_checkpoint_file(path);
  auto [cfg, spec] = parse_header(file.config_json);
  Rng scratch(0);
  auto model = SyncGanModel::create(spec, scratch);
  restore_parameters(model, file);
  Trainer t(std::move(model), cfg);
  for (auto n : kAllNetworks) {
    auto& opt = t.optimizers_[static_cast<int>(n)];
    const std::string prefix = std::string("adam.") + network_name(n);
    opt.step = file.at(prefix + ".step").u64.at(0);
    const auto count = network_parameters(t.model_, n).size();
    if (file.find(prefix + ".m.0") == nullptr) continue;
    for (std::size_t i = 0; i < count; ++i) {
      opt.first_moment.push_back(file.at(prefix + ".m." + std::to_string(i)).f64);
      opt.second_moment.push_back(file.at(prefix + ".v." + std::to_string(i)).f64);
    }
  }
  t.iteration_ = file.at("trainer.iteration").u64.at(0);
  const auto& rng = file.at("trainer.rng").u8;
  t.rng_.load_state(std::string(rng.begin(), rng.end()));
  return t;
}

void apply_semi_rate(PairedDataset& ds, const TrainConfig& config) {
  constexpr std::uint64_t kMaskStream = 0x6d61736bULL;
  Rng rng(config.seed ^ kMaskStream);
  assign_paired_mask(ds, config.semi_rate, rng);
}

SyncGanModel load_model(const fs::path& checkpoint) {
  const auto file = read_checkpoint_file(checkpoint);
  const auto spec = parse_header(file.config_json).second;
  Rng scratch(0);
  auto model = SyncGanModel::create(spec, scratch);
  restore_parameters(model, file);
  return model;
}

std::string format_metrics_row(const IterationMetrics& m) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << m.iteration << ',' << num(m.loss_d1) << ',' << num(m.loss_d2) << ',' << num(m.loss_g1_adv) << ','
     << num(m.loss_g2_adv) << ',';
  if (!m.sync_skipped) os << num(m.loss_sync) << ',' << num(m.loss_gen_sync);
  else os << ',';
  os << ',' << num(m.wall_ms);
  return os.str();
}

void train(Trainer& trainer, const PairedDataset& ds, const fs::path& out_dir,
           const std::function<void(const IterationMetrics&)>& on_iteration) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir))
    throw DataError(DataError::Kind::kIo, "train: output directory " + out_dir.string() + " is not writable");
  const auto csv_path = out_dir / kMetricsFile;

  // Keep rows up to the trainer's iteration so a resumed run continues the
  // same file.
  std::vector<std::string> kept{kMetricsHeader};
  if (trainer.iteration() > 0) {
    std::ifstream in(csv_path);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto iter = std::stoull(line.substr(0, line.find(',')));
      if (iter <= trainer.iteration()) kept.push_back(line);
    }
  }
  std::ofstream csv(csv_path, std::ios::trunc);
  if (!csv) throw DataError(DataError::Kind::kIo, "train: cannot write " + csv_path.string());
  for (const auto& l : kept) csv << l << '\n';

  const auto ckpt = out_dir / kCheckpointFile;
  const auto every = trainer.config().checkpoint_every;
  while (trainer.iteration() < trainer.config().iterations) {
    const auto m = trainer.step(ds);
    csv << format_metrics_row(m) << '\n';
    if (on_iteration) on_iteration(m);
    if (every > 0 && trainer.iteration() % every == 0 && trainer.iteration() < trainer.config().iterations) {
      csv.flush();
      trainer.save_checkpoint(ckpt);
    }
  }
  csv.flush();
  if (!csv) throw DataError(DataError::Kind::kIo, "train: failed writing " + csv_path.string());
  trainer.save_checkpoint(ckpt);
}

}  // namespace syncgan
