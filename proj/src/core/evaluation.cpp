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

#include "evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "adam.hpp"
#include "json.hpp"
#include "trainer.hpp"

namespace syncgan {

using nlohmann::json;

namespace {

constexpr std::size_t kEvalChunk = 256;

LabeledSet take(const LabeledSet& data, std::span<const std::size_t> idx) {
  LabeledSet out;
  out.x = gather_rows(data.x, idx);
  for (auto i : idx) out.labels.push_back(data.labels[i]);
  return out;
}

std::vector<int> argmax_rows(const Tensor& scores) {
  std::vector<int> out(scores.dim(0));
  const auto cols = scores.dim(1);
  const auto v = scores.data();
  for (std::size_t r = 0; r < out.size(); ++r) {
    const auto row = v.subspan(r * cols, cols);
    out[r] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

}  // namespace

LabeledSet modality_set(const PairedDataset& ds, int modality) {
  check_modality(modality);
  if (ds.concept_label.empty()) throw DataError(DataError::Kind::kInvalid, "dataset has no concept labels");
  return {modality == 1 ? ds.items1 : ds.items2, ds.concept_label};
}

std::vector<int> Classifier::predict(const Tensor& x) const {
  NoGradGuard no_grad;
  std::vector<int> out;
  out.reserve(x.dim(0));
  for (std::size_t begin = 0; begin < x.dim(0); begin += kEvalChunk) {
    const auto end = std::min(x.dim(0), begin + kEvalChunk);
    const auto part = argmax_rows(net.forward(slice(x, 0, begin, end)));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

double accuracy(const Classifier& clf, const LabeledSet& data) {
  if (data.labels.empty()) return 0.0;
  const auto pred = clf.predict(data.x);
  std::size_t hit = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hit += pred[i] == data.labels[i];
  return static_cast<double>(hit) / static_cast<double>(pred.size());
}

Classifier train_classifier(const LabeledSet& data, std::size_t epochs, Rng& rng, const ClassifierOptions& options) {
  if (data.labels.size() != data.x.dim(0))
    throw DataError(DataError::Kind::kCountMismatch, "classifier: label count does not match item count");
  const std::set<int> distinct(data.labels.begin(), data.labels.end());
  if (distinct.size() < 2) throw DataError(DataError::Kind::kInvalid, "classifier: corpus has a single class");
  if (*distinct.begin() < 0) throw DataError(DataError::Kind::kInvalid, "classifier: negative label");

  Classifier clf;
  clf.num_classes = static_cast<std::size_t>(*distinct.rbegin()) + 1;
  clf.net = Mlp::create({data.x.dim(1), options.hidden, clf.num_classes}, Activation::kLeakyRelu,
                        Activation::kIdentity, rng);

  std::vector<std::size_t> order(data.labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  const auto n_hold = static_cast<std::size_t>(std::llround(options.holdout_fraction * order.size()));
  const std::vector<std::size_t> hold_idx(order.begin(), order.begin() + n_hold);
  std::vector<std::size_t> train_idx(order.begin() + n_hold, order.end());

  AdamState opt(AdamOptions{options.learning_rate, 0.9, 0.999, 1e-8});
  auto params = clf.net.parameters();
  for (std::size_t e = 0; e < epochs; ++e) {
    rng.shuffle(std::span<std::size_t>(train_idx));
    for (std::size_t begin = 0; begin < train_idx.size(); begin += options.batch_size) {
      const auto end = std::min(train_idx.size(), begin + options.batch_size);
      const auto batch = take(data, std::span<const std::size_t>(train_idx).subspan(begin, end - begin));
      clf.net.zero_grad();
      backward(softmax_cross_entropy(clf.net.forward(batch.x), batch.labels));
      adam_step(params, opt);
    }
  }
  clf.heldout_accuracy = n_hold > 0 ? accuracy(clf, take(data, hold_idx)) : 0.0;
  return clf;
}

SyncRateReport agreement_report(const std::vector<int>& labels1, const std::vector<int>& labels2,
                                std::size_t num_classes) {
  if (labels1.size() != labels2.size()) throw std::invalid_argument("agreement: label sequences differ in length");
  if (labels1.empty()) throw std::invalid_argument("agreement: need at least one pair");
  SyncRateReport r;
  r.n_pairs = labels1.size();
  r.confusion.assign(num_classes, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < labels1.size(); ++i) {
    const auto a = static_cast<std::size_t>(labels1[i]);
    const auto b = static_cast<std::size_t>(labels2[i]);
    if (a >= num_classes || b >= num_classes) throw std::invalid_argument("agreement: label out of range");
    ++r.confusion[a][b];
  }
  for (std::size_t c = 0; c < num_classes; ++c) r.n_agree += r.confusion[c][c];
  r.sync_rate = static_cast<double>(r.n_agree) / static_cast<double>(r.n_pairs);
  return r;
}

SyncRateReport sync_rate(const SyncGanModel& model, const Classifier& clf1, const Classifier& clf2,
                         std::size_t n_pairs, Rng& rng) {
  if (n_pairs < 1) throw std::invalid_argument("sync_rate: n_pairs must be at least 1");
  if (clf1.num_classes != clf2.num_classes)
    throw std::invalid_argument("sync_rate: classifiers disagree on the number of classes");
  NoGradGuard no_grad;
  const auto latent = model.spec().latent_dim;
  std::vector<int> l1, l2;
  for (std::size_t begin = 0; begin < n_pairs; begin += kEvalChunk) {
    const auto count = std::min(kEvalChunk, n_pairs - begin);
    const Tensor z({count, latent}, rng.normal_vector(count * latent));
    const auto a = clf1.predict(model.generate(z, 1));
    const auto b = clf2.predict(model.generate(z, 2));
    l1.insert(l1.end(), a.begin(), a.end());
    l2.insert(l2.end(), b.begin(), b.end());
  }
  auto report = agreement_report(l1, l2, clf1.num_classes);
  report.classifier1_accuracy = clf1.heldout_accuracy;
  report.classifier2_accuracy = clf2.heldout_accuracy;
  return report;
}

std::string SyncRateReport::to_json() const {
  json j;
  j["n_pairs"] = n_pairs;
  j["n_agree"] = n_agree;
  j["sync_rate"] = sync_rate;
  j["confusion"] = confusion;
  j["classifier1_heldout_accuracy"] = classifier1_accuracy;
  j["classifier2_heldout_accuracy"] = classifier2_accuracy;
  j["semi_rate"] = semi_rate;
  j["batch_size"] = batch_size;
  j["seed"] = seed;
  return j.dump(2);
}

std::string SyncRateReport::to_csv() const {
  std::ostringstream os;
  os << "n_pairs,n_agree,sync_rate,classifier1_heldout_accuracy,classifier2_heldout_accuracy,semi_rate,batch_size,seed\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f,%.6f,%.6f,%.6f,%zu,%llu\n", n_pairs, n_agree, sync_rate,
                classifier1_accuracy, classifier2_accuracy, semi_rate, batch_size,
                static_cast<unsigned long long>(seed));
  os << buf;
  return os.str();
}

std::vector<SweepRow> semi_supervised_sweep(const std::vector<double>& rates, const TrainConfig& config,
                                            const PairedDataset& ds, const Classifier& clf1, const Classifier& clf2,
                                            std::size_t n_pairs) {
  std::vector<SweepRow> rows;
  for (double rate : rates) {
    SweepRow row;
    row.rate = rate;
    try {
      if (!(rate > 0.0 && rate <= 1.0)) throw ConfigError("sweep: rate must lie in (0, 1]");
      TrainConfig cfg = config;
      cfg.semi_rate = rate;
      PairedDataset cell = ds;
      apply_semi_rate(cell, cfg);
      auto trainer = Trainer::create(cfg, cell);
      while (trainer.iteration() < cfg.iterations) trainer.step(cell);
      Rng eval_rng(config.seed + 1);
      row.sync_rate = sync_rate(trainer.model(), clf1, clf2, n_pairs, eval_rng).sync_rate;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "semi_rate,sync_rate,error\n";
  for (const auto& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g,", r.rate);
    os << buf;
    if (r.sync_rate) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.sync_rate);
      os << buf;
    }
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << ',' << err << '\n';
  }
  return os.str();
}

double mean_pairwise_distance(const Tensor& x) {
  const auto n = x.dim(0), d = x.dim(1);
  if (n < 2) return 0.0;
  const auto v = x.data();
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = v[a * d + k] - v[b * d + k];
        s += diff * diff;
      }
      total += std::sqrt(s);
    }
  return total / static_cast<double>(n * (n - 1) / 2);
}

}  // namespace syncgan
