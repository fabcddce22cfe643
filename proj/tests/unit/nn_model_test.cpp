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

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "model.hpp"
#include "nn.hpp"
#include "oracles.hpp"

namespace syncgan {
namespace {

using testing::ref_layers;
using testing::to_matrix;

TEST(MlpTest, ForwardMatchesScalarOracle) {
  Rng rng(5);
  for (auto out_act : {Activation::kTanh, Activation::kSigmoid, Activation::kIdentity}) {
    const auto net = Mlp::create({7, 11, 5, 3}, Activation::kLeakyRelu, out_act, rng);
    const Tensor x({4, 7}, rng.normal_vector(28));
    const auto y = net.forward(x);
    const auto ref = testing::naive_mlp(to_matrix(x), ref_layers(net));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(y.at(i, j), ref[i][j], 1e-12);
  }
}

TEST(MlpTest, InitVarianceFollowsFanSum) {
  Rng rng(1);
  const auto layer = init_dense(200, 300, Activation::kIdentity, rng);
  double s = 0, s2 = 0;
  for (double w : layer.weight.data()) {
    s += w;
    s2 += w * w;
  }
  const double n = static_cast<double>(layer.weight.numel());
  EXPECT_NEAR(s / n, 0.0, 5e-3);
  EXPECT_NEAR(s2 / n, 2.0 / 500.0, 2e-4);
  for (double b : layer.bias.data()) EXPECT_EQ(b, 0.0);
}

TEST(MlpTest, ZeroDimensionRejected) {
  Rng rng(1);
  EXPECT_ANY_THROW(Mlp::create({4, 0, 2}, Activation::kLeakyRelu, Activation::kIdentity, rng));
}

TEST(MlpTest, NamedParametersAreOrdered) {
  Rng rng(1);
  const auto net = Mlp::create({2, 3, 1}, Activation::kLeakyRelu, Activation::kSigmoid, rng);
  const auto named = net.named_parameters("d1");
  ASSERT_EQ(named.size(), 4u);
  EXPECT_EQ(named[0].first, "d1.0.weight");
  EXPECT_EQ(named[3].first, "d1.1.bias");
}

ModelSpec small_spec(SynchronizerVariant v) {
  ModelSpec s;
  s.latent_dim = 4;
  s.shapes = {SampleShape{3, 3}, SampleShape{2, 5}};
  s.variant = v;
  s.generator_hidden = {8};
  s.discriminator_hidden = {6};
  s.sync_feature_dim = 5;
  s.sync_hidden = 7;
  return s;
}

TEST(ModelTest, OutputShapesAndRanges) {
  for (auto v : {SynchronizerVariant::kCrossModal, SynchronizerVariant::kStyleTransfer}) {
    Rng rng(3);
    const auto model = SyncGanModel::create(small_spec(v), rng);
    const Tensor z({6, 4}, rng.normal_vector(24));
    const auto x1 = model.generate(z, 1);
    const auto x2 = model.generate(z, 2);
    EXPECT_EQ(x1.shape(), (Shape{6, 9}));
    EXPECT_EQ(x2.shape(), (Shape{6, 10}));
    for (double u : x1.data()) EXPECT_TRUE(u > -1.0 && u < 1.0);
    const auto d = model.discriminate(x2, 2);
    EXPECT_EQ(d.shape(), (Shape{6, 1}));
    const auto s = model.sync_score(x1, x2);
    EXPECT_EQ(s.shape(), (Shape{6, 1}));
    for (double u : s.data()) EXPECT_TRUE(u > 0.0 && u < 1.0);
    ComputationTape::current().clear();
  }
}

TEST(ModelTest, CrossModalScoreComposesExtractorsAndHead) {
  Rng rng(8);
  const auto model = SyncGanModel::create(small_spec(SynchronizerVariant::kCrossModal), rng);
  const Tensor x1({2, 9}, rng.normal_vector(18));
  const Tensor x2({2, 10}, rng.normal_vector(20));
  const auto& s = model.synchronizer();
  const auto f1 = testing::naive_mlp(to_matrix(x1), ref_layers(s.extract1));
  const auto f2 = testing::naive_mlp(to_matrix(x2), ref_layers(s.extract2));
  testing::Matrix joint = f1;
  for (std::size_t i = 0; i < 2; ++i) joint[i].insert(joint[i].end(), f2[i].begin(), f2[i].end());
  const auto ref = testing::naive_mlp(joint, ref_layers(s.head));
  const auto got = model.sync_score(x1, x2);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(got.at(i, 0), ref[i][0], 1e-12);
  ComputationTape::current().clear();
}

TEST(ModelTest, InvalidModalityAndBatchMismatch) {
  Rng rng(3);
  const auto model = SyncGanModel::create(small_spec(SynchronizerVariant::kStyleTransfer), rng);
  EXPECT_ANY_THROW(model.generate(Tensor::zeros({1, 4}), 3));
  EXPECT_ANY_THROW(model.generate(Tensor::zeros({1, 5}), 1));
  EXPECT_ANY_THROW(model.sync_score(Tensor::zeros({2, 9}), Tensor::zeros({3, 10})));
}

TEST(ModelTest, ParameterNamesAreUniqueAndPrefixed) {
  Rng rng(3);
  const auto model = SyncGanModel::create(small_spec(SynchronizerVariant::kCrossModal), rng);
  std::set<std::string> names;
  for (const auto& [n, t] : model.named_parameters()) EXPECT_TRUE(names.insert(n).second) << n;
  EXPECT_TRUE(names.count("g1.0.weight"));
  EXPECT_TRUE(names.count("s.nf.1.bias"));
  EXPECT_TRUE(names.count("s.n2.0.weight"));
}

TEST(ModelTest, SameSeedSameParameters) {
  Rng a(77), b(77);
  const auto m1 = SyncGanModel::create(small_spec(SynchronizerVariant::kCrossModal), a);
  const auto m2 = SyncGanModel::create(small_spec(SynchronizerVariant::kCrossModal), b);
  const auto p1 = m1.named_parameters(), p2 = m2.named_parameters();
  for (std::size_t i = 0; i < p1.size(); ++i)
    EXPECT_TRUE(std::equal(p1[i].second.data().begin(), p1[i].second.data().end(), p2[i].second.data().begin()));
}

TEST(ModelTest, VariantNamesRoundTrip) {
  for (auto v : {SynchronizerVariant::kCrossModal, SynchronizerVariant::kStyleTransfer})
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  EXPECT_ANY_THROW(parse_variant("siamese"));
}

}  // namespace
}  // namespace syncgan
