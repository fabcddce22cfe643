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

#include "fixtures.hpp"
#include "inversion.hpp"
#include "model.hpp"

namespace syncgan {
namespace {

Mlp linear_generator(std::size_t k, std::size_t d, Rng& rng) {
  return Mlp::create({k, d}, Activation::kIdentity, Activation::kIdentity, rng);
}

TEST(InversionTest, LinearGeneratorMatchesPseudoInverse) {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = linear_generator(3, 8, rng);
    const Tensor x({1, 8}, rng.normal_vector(8));  // generally outside the range of G
    InversionConfig cfg;
    cfg.eta = 0.05;
    cfg.max_steps = 20000;
    cfg.tol = 0.0;
    cfg.restarts = 1;
    const auto res = invert_latent(g, x, cfg, rng);
    const auto ref = testing::naive_least_squares(testing::to_matrix(g.layers()[0].weight), {x.data().begin(), x.data().end()});
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(res.z_hat.data()[i], ref[i], 1e-4);
  }
}

TEST(InversionTest, AcceptedStepsNeverIncreaseMse) {
  Rng rng(3);
  const auto g = Mlp::create({4, 12, 9}, Activation::kLeakyRelu, Activation::kTanh, rng);
  const Tensor x({1, 9}, rng.normal_vector(9));
  InversionConfig cfg;
  cfg.eta = 5.0;  // deliberately too large so backtracking engages
  cfg.max_steps = 200;
  const auto res = invert_latent(g, x, cfg, rng);
  for (const auto& r : res.restarts)
    for (std::size_t s = 1; s < r.mse_trace.size(); ++s) EXPECT_LE(r.mse_trace[s], r.mse_trace[s - 1]);
}

TEST(InversionTest, BestRestartIsSelected) {
  Rng rng(5);
  const auto g = Mlp::create({2, 6, 5}, Activation::kLeakyRelu, Activation::kTanh, rng);
  const Tensor x({1, 5}, rng.normal_vector(5));
  InversionConfig cfg;
  cfg.max_steps = 30;
  cfg.restarts = 4;
  const auto res = invert_latent(g, x, cfg, rng);
  ASSERT_EQ(res.restarts.size(), 4u);
  for (const auto& r : res.restarts) EXPECT_GE(r.mse, res.final_mse);
}

TEST(InversionTest, DeterministicForFixedSeed) {
  Rng init(2);
  const auto g = Mlp::create({3, 8, 6}, Activation::kLeakyRelu, Activation::kTanh, init);
  const Tensor x({1, 6}, init.normal_vector(6));
  Rng a(9), b(9);
  const auto ra = invert_latent(g, x, InversionConfig{}, a);
  const auto rb = invert_latent(g, x, InversionConfig{}, b);
  EXPECT_TRUE(std::equal(ra.z_hat.data().begin(), ra.z_hat.data().end(), rb.z_hat.data().begin()));
  EXPECT_EQ(ra.final_mse, rb.final_mse);
}

TEST(InversionTest, ExactGeneratorOutputIsRecovered) {
  Rng rng(4);
  const auto g = Mlp::create({3, 16, 10}, Activation::kLeakyRelu, Activation::kTanh, rng);
  const Tensor z_star({1, 3}, {0.3, -0.5, 0.8});
  Tensor x;
  {
    NoGradGuard ng;
    x = g.forward(z_star);
  }
  InversionConfig cfg;
  cfg.max_steps = 2000;
  cfg.tol = 1e-10;
  cfg.eta = 0.5;
  cfg.init = std::vector<double>{0.0, 0.0, 0.0};
  const auto res = invert_latent(g, x, cfg, rng);
  EXPECT_LT(res.final_mse, 1e-8);
  ASSERT_EQ(res.restarts.size(), 1u);
}

TEST(InversionTest, NonFiniteGeneratorFailsEveryRestart) {
  Rng rng(1);
  const GeneratorFn nan_gen = [](const Tensor& z) { return scale(z, std::nan("")); };
  const auto res = invert_latent(nan_gen, 2, Tensor({1, 2}, {0.0, 0.0}), InversionConfig{}, rng);
  EXPECT_TRUE(res.all_failed);
  for (const auto& r : res.restarts) EXPECT_TRUE(r.failed);
}

TEST(InversionTest, ArgumentErrors) {
  Rng rng(1);
  const auto g = linear_generator(2, 4, rng);
  EXPECT_THROW(invert_latent(g, Tensor::zeros({1, 5}), InversionConfig{}, rng), TensorError);
  EXPECT_THROW(invert_latent(g, Tensor::zeros({2, 4}), InversionConfig{}, rng), TensorError);
  InversionConfig bad;
  bad.eta = 0.0;
  EXPECT_THROW(invert_latent(g, Tensor::zeros({1, 4}), bad, rng), std::invalid_argument);
}

ModelSpec tiny_spec() {
  ModelSpec s;
  s.latent_dim = 3;
  s.shapes = {SampleShape{3, 3}, SampleShape{2, 5}};
  s.generator_hidden = {16};
  s.discriminator_hidden = {4};
  s.sync_feature_dim = 3;
  s.sync_hidden = 3;
  return s;
}

TEST(TransferTest, GeneratedSampleTransfersToItsPartner) {
  Rng rng(6);
  const auto model = SyncGanModel::create(tiny_spec(), rng);
  const Tensor z({1, 3}, {0.4, -0.2, 0.7});
  Tensor x1, x2;
  {
    NoGradGuard ng;
    x1 = model.generate(z, 1);
    x2 = model.generate(z, 2);
  }
  InversionConfig cfg;
  cfg.max_steps = 3000;
  cfg.tol = 1e-12;
  cfg.eta = 0.5;
  InversionResult details;
  const auto y = transfer(model, x1, 1, 2, cfg, rng, &details);
  EXPECT_LT(details.final_mse, 1e-8);
  for (std::size_t i = 0; i < x2.numel(); ++i) EXPECT_NEAR(y.data()[i], x2.data()[i], 1e-3);
}

TEST(TransferTest, SameModalityRejected) {
  Rng rng(6);
  const auto model = SyncGanModel::create(tiny_spec(), rng);
  EXPECT_THROW(transfer(model, Tensor::zeros({1, 9}), 1, 1, InversionConfig{}, rng), std::invalid_argument);
  EXPECT_ANY_THROW(transfer(model, Tensor::zeros({1, 9}), 1, 3, InversionConfig{}, rng));
}

}  // namespace
}  // namespace syncgan
