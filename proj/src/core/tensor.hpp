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

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace syncgan {

using Shape = std::vector<std::size_t>;

std::string shape_str(const Shape& shape);
std::size_t shape_numel(const Shape& shape);

/// Raised for incompatible shapes, invalid op arguments and misuse of the
/// autodiff tape.
class TensorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct Node {
  Shape shape;
  std::vector<double> value;
  std::vector<double> grad;  // empty until the first backward reaches it
  bool requires_grad = false;
  bool is_leaf = true;
};

}  // namespace detail

/// Dense row-major array of doubles with an optional gradient slot.
///
/// A Tensor is a shared handle: copies alias the same storage. Values of
/// non-leaf tensors are fixed at construction; leaf tensors (parameters,
/// inputs) may be mutated in place through mutable_data().
class Tensor {
 public:
  Tensor() = default;
  Tensor(Shape shape, std::vector<double> values, bool requires_grad = false);

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t numel() const;

  std::span<const double> data() const;
  std::span<double> mutable_data();
  double item() const;
  double at(std::size_t row, std::size_t col) const;

  bool requires_grad() const;
  void set_requires_grad(bool on);
  bool is_leaf() const;

  bool has_grad() const;
  std::span<const double> grad() const;
  std::span<double> mutable_grad();
  /// Fills the gradient buffer with zeros, allocating it if absent.
  void zero_grad();
  void clear_grad();

  /// New leaf sharing no storage with this tensor and carrying no history.
  Tensor detach() const;
  Tensor clone() const;

  bool same_node(const Tensor& other) const { return node_ == other.node_; }

  // Internal: used by the op implementations and the tape.
  const std::shared_ptr<detail::Node>& node() const { return node_; }
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<detail::Node> node_;
};

enum class OpKind {
  kMatmul,
  kAdd,
  kSub,
  kMul,
  kScale,
  kShift,
  kLeakyRelu,
  kTanh,
  kSigmoid,
  kLog,
  kClamp,
  kMean,
  kSum,
  kConcat,
  kReshape,
  kSlice,
  kSoftmaxCrossEntropy,
};

const char* op_name(OpKind kind);

/// Propagates the output gradient into the input gradient buffers. A null
/// entry in `input_grads` means that input does not need a gradient.
using BackwardFn = std::function<void(std::span<const double> out_grad,
                                      std::span<std::vector<double>*> input_grads)>;

struct TapeEntry {
  OpKind kind;
  std::vector<std::shared_ptr<detail::Node>> inputs;
  std::shared_ptr<detail::Node> output;
  BackwardFn backward;  // captures saved intermediates
};

/// Ordered record of taped operations for the current thread. Recording
/// order is a topological order of the graph, so reverse iteration is a
/// valid backward schedule.
class ComputationTape {
 public:
  static ComputationTape& current();

  void record(TapeEntry entry);
  void clear();
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<TapeEntry>& entries() const { return entries_; }

  bool recording() const { return paused_ == 0; }
  void pause() { ++paused_; }
  void resume() { --paused_; }

 private:
  std::vector<TapeEntry> entries_;
  int paused_ = 0;
};

/// Disables tape recording for its lifetime (inference, evaluation).
class NoGradGuard {
 public:
  NoGradGuard() { ComputationTape::current().pause(); }
  ~NoGradGuard() { ComputationTape::current().resume(); }
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;
};

struct BackwardOptions {
  /// Keep the tape so a second backward can reuse the same forward graph.
  bool retain_tape = false;
  /// When non-empty, only these leaves accumulate gradients and the
  /// traversal is pruned to the sub-graph that reaches them.
  std::vector<Tensor> only;
  /// Seed multiplier for d(loss)/d(loss).
  double seed = 1.0;
};

/// Accumulates d(loss)/d(leaf) into every reachable requires_grad leaf.
void backward(const Tensor& loss, const BackwardOptions& options = {});

// ---- primitive ops --------------------------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b);
/// Same-shape add, or bias add of a rank-1 [n] tensor onto a [m x n] tensor.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& x, double factor);
Tensor shift(const Tensor& x, double offset);
Tensor leaky_relu(const Tensor& x, double alpha);
Tensor tanh(const Tensor& x);
Tensor sigmoid(const Tensor& x);
/// Natural log; rejects zero and negative elements. NaN propagates.
Tensor log(const Tensor& x);
Tensor clamp(const Tensor& x, double lo, double hi);
Tensor mean(const Tensor& x);
Tensor sum(const Tensor& x);
Tensor concat(std::span<const Tensor> parts, std::size_t axis);
Tensor concat(std::initializer_list<Tensor> parts, std::size_t axis);
Tensor reshape(const Tensor& x, Shape shape);
Tensor slice(const Tensor& x, std::size_t axis, std::size_t begin, std::size_t end);
/// Mean cross-entropy of softmax(logits) against integer class labels.
Tensor softmax_cross_entropy(const Tensor& logits, std::span<const int> labels);

/// Gathers rows of a rank-2 leaf into a new leaf (no history).
Tensor gather_rows(const Tensor& x, std::span<const std::size_t> rows);

}  // namespace syncgan
