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

#include "grad_cases.hpp"
#include "oracles.hpp"
#include "tensor.hpp"

namespace syncgan {
namespace {

using testing::grad_check;

TEST(TensorTest, MatmulSmallExample) {
  const Tensor a({2, 2}, {1, 2, 3, 4});
  const Tensor b({2, 2}, {5, 6, 7, 8});
  const auto c = matmul(a, b);
  EXPECT_EQ(c.shape(), (Shape{2, 2}));
  const std::vector<double> expect{19, 22, 43, 50};
  EXPECT_EQ(std::vector<double>(c.data().begin(), c.data().end()), expect);
}

TEST(TensorTest, MatmulRejectsInnerMismatch) {
  EXPECT_THROW(matmul(Tensor::zeros({2, 3}), Tensor::zeros({2, 3})), TensorError);
}

TEST(TensorTest, MatmulMatchesNaiveOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = 1 + rng.index(9), k = 1 + rng.index(9), n = 1 + rng.index(9);
    const auto a = Tensor({m, k}, rng.normal_vector(m * k));
    const auto b = Tensor({k, n}, rng.normal_vector(k * n));
    testing::Matrix ra(m, std::vector<double>(k)), rb(k, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j) ra[i][j] = a.at(i, j);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) rb[i][j] = b.at(i, j);
    const auto ref = testing::naive_matmul(ra, rb);
    const auto c = matmul(a, b);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(c.at(i, j), ref[i][j], 1e-12);
  }
}

TEST(TensorTest, BiasAddBroadcastsOverRows) {
  const auto y = add(Tensor({2, 3}, {0, 0, 0, 1, 1, 1}), Tensor({3}, {1, 2, 3}));
  const std::vector<double> expect{1, 2, 3, 2, 3, 4};
  EXPECT_EQ(std::vector<double>(y.data().begin(), y.data().end()), expect);
  EXPECT_THROW(add(Tensor::zeros({2, 3}), Tensor::zeros({2})), TensorError);
}

TEST(TensorTest, LeakyReluAndClampValues) {
  const auto y = leaky_relu(Tensor({3}, {-1, 0, 2}), 0.2);
  EXPECT_DOUBLE_EQ(y.data()[0], -0.2);
  EXPECT_DOUBLE_EQ(y.data()[2], 2.0);
  const auto c = clamp(Tensor({3}, {-5, 0.5, 5}), 0, 1);
  EXPECT_DOUBLE_EQ(c.data()[0], 0.0);
  EXPECT_DOUBLE_EQ(c.data()[1], 0.5);
  EXPECT_DOUBLE_EQ(c.data()[2], 1.0);
}

TEST(TensorTest, LogRejectsNonPositive) {
  EXPECT_THROW(log(Tensor({2}, {1.0, 0.0})), TensorError);
  EXPECT_THROW(log(Tensor({1}, {-1.0})), TensorError);
}

TEST(TensorTest, ConcatSliceReshapeShapes) {
  const Tensor a({2, 2}, {1, 2, 3, 4});
  const Tensor b({2, 1}, {9, 8});
  const auto c = concat({a, b}, 1);
  EXPECT_EQ(c.shape(), (Shape{2, 3}));
  EXPECT_DOUBLE_EQ(c.at(1, 2), 8.0);
  EXPECT_THROW(concat({a, b}, 0), TensorError);
  const auto s = slice(c, 1, 1, 3);
  EXPECT_EQ(s.shape(), (Shape{2, 2}));
  EXPECT_DOUBLE_EQ(s.at(0, 0), 2.0);
  EXPECT_THROW(slice(c, 1, 2, 4), TensorError);
  EXPECT_EQ(reshape(c, {3, 2}).shape(), (Shape{3, 2}));
  EXPECT_THROW(reshape(c, {4, 2}), TensorError);
}

TEST(TensorTest, SoftmaxCrossEntropyOfUniformLogits) {
  const auto loss = softmax_cross_entropy(Tensor::zeros({2, 4}), std::vector<int>{0, 3});
  EXPECT_NEAR(loss.item(), std::log(4.0), 1e-15);
  EXPECT_THROW(softmax_cross_entropy(Tensor::zeros({2, 4}), std::vector<int>{0, 4}), TensorError);
}

TEST(TensorTest, EveryOpPassesFiniteDifferenceCheck) {
  Rng rng(2024);
  for (const auto& c : testing::op_grad_cases()) {
    for (int k = 0; k < 10; ++k) {
      const auto inst = c.make(rng);
      const auto r = grad_check(inst.fn, inst.inputs);
      EXPECT_LT(r.max_rel_error, 1e-6) << c.name << " instance " << k;
      EXPECT_GT(r.checked, 0u);
    }
  }
}

TEST(TensorTest, OpCasesCoverEveryOpKind) {
  std::set<std::string> names;
  for (const auto& c : testing::op_grad_cases()) names.insert(c.name);
  for (int k = 0; k <= static_cast<int>(OpKind::kSoftmaxCrossEntropy); ++k)
    EXPECT_TRUE(names.count(op_name(static_cast<OpKind>(k)))) << op_name(static_cast<OpKind>(k));
}

TEST(TensorTest, GradientsAccumulateUntilZeroed) {
  Tensor x({2}, {1.0, 2.0}, true);
  backward(sum(x));
  backward(sum(x));
  EXPECT_DOUBLE_EQ(x.grad()[0], 2.0);
  x.zero_grad();
  EXPECT_DOUBLE_EQ(x.grad()[0], 0.0);
}

TEST(TensorTest, BackwardSeedScalesGradient) {
  Tensor x({1}, {3.0}, true);
  backward(sum(mul(x, x)), BackwardOptions{false, {}, -1.0});
  EXPECT_DOUBLE_EQ(x.grad()[0], -6.0);
}

TEST(TensorTest, RestrictedBackwardLeavesOtherLeavesUntouched) {
  Tensor a({1}, {2.0}, true), b({1}, {5.0}, true);
  const auto y = sum(mul(a, b));
  backward(y, BackwardOptions{true, {a}, 1.0});
  EXPECT_DOUBLE_EQ(a.grad()[0], 5.0);
  EXPECT_FALSE(b.has_grad());
  backward(y, BackwardOptions{false, {b}, 1.0});
  EXPECT_DOUBLE_EQ(b.grad()[0], 2.0);
  EXPECT_DOUBLE_EQ(a.grad()[0], 5.0);
  EXPECT_TRUE(ComputationTape::current().empty());
}

TEST(TensorTest, NoGradGuardRecordsNothing) {
  ComputationTape::current().clear();
  Tensor x({2}, {1.0, 2.0}, true);
  {
    NoGradGuard guard;
    const auto y = sum(mul(x, x));
    EXPECT_DOUBLE_EQ(y.item(), 5.0);
  }
  EXPECT_TRUE(ComputationTape::current().empty());
}

TEST(TensorTest, BackwardRequiresScalar) {
  Tensor x({2}, {1.0, 2.0}, true);
  EXPECT_THROW(backward(scale(x, 2.0)), TensorError);
  ComputationTape::current().clear();
}

TEST(TensorTest, NonLeafIsReadOnly) {
  Tensor x({2}, {1.0, 2.0}, true);
  auto y = scale(x, 2.0);
  EXPECT_THROW(y.mutable_data(), TensorError);
  ComputationTape::current().clear();
}

TEST(TensorTest, GatherRowsCopies) {
  const Tensor x({3, 2}, {1, 2, 3, 4, 5, 6});
  const std::vector<std::size_t> rows{2, 0};
  const auto g = gather_rows(x, rows);
  EXPECT_DOUBLE_EQ(g.at(0, 1), 6.0);
  EXPECT_DOUBLE_EQ(g.at(1, 0), 1.0);
  const std::vector<std::size_t> bad{3};
  EXPECT_THROW(gather_rows(x, bad), TensorError);
}

}  // namespace
}  // namespace syncgan
