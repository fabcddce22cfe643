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

#include "tensor.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace syncgan {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;
using MutMap = Eigen::Map<RowMat>;

using NodePtr = std::shared_ptr<detail::Node>;

void require(bool cond, const std::string& msg) {
  if (!cond) throw TensorError(msg);
}

const NodePtr& node_of(const Tensor& t, const char* op) {
  require(t.defined(), std::string(op) + ": undefined tensor");
  return t.node();
}

NodePtr new_node(Shape shape, std::vector<double> values) {
  auto out = std::make_shared<detail::Node>();
  out->shape = std::move(shape);
  out->value = std::move(values);
  return out;
}

// Records `out` on the tape when any input needs a gradient.
Tensor finish(OpKind kind, NodePtr out, std::vector<NodePtr> inputs, BackwardFn backward) {
  auto& tape = ComputationTape::current();
  const bool needs_grad =
      tape.recording() &&
      std::any_of(inputs.begin(), inputs.end(), [](const NodePtr& n) { return n->requires_grad; });
  if (needs_grad) {
    out->requires_grad = true;
    out->is_leaf = false;
    tape.record(TapeEntry{kind, std::move(inputs), out, std::move(backward)});
  }
  return Tensor(std::move(out));
}

Tensor make_result(OpKind kind, Shape shape, std::vector<double> values,
                   std::vector<NodePtr> inputs, BackwardFn backward) {
  return finish(kind, new_node(std::move(shape), std::move(values)), std::move(inputs), std::move(backward));
}

// Elementwise op; `dfdx` sees the input and output value of each element.
template <typename F, typename D>
Tensor unary(OpKind kind, const Tensor& x, F&& f, D dfdx) {
  const auto& xn = node_of(x, op_name(kind));
  std::vector<double> values(xn->value.size());
  std::transform(xn->value.begin(), xn->value.end(), values.begin(), f);
  auto out = new_node(xn->shape, std::move(values));
  detail::Node* xp = xn.get();
  detail::Node* op = out.get();
  return finish(kind, std::move(out), {xn},
                [xp, op, dfdx](std::span<const double> g, std::span<std::vector<double>*> gi) {
                  auto& dx = *gi[0];
                  for (std::size_t i = 0; i < g.size(); ++i) dx[i] += g[i] * dfdx(xp->value[i], op->value[i]);
                });
}

std::pair<std::size_t, std::size_t> outer_inner(const Shape& shape, std::size_t axis) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= shape[i];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) inner *= shape[i];
  return {outer, inner};
}

}  // namespace

std::string shape_str(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
  os << ']';
  return os.str();
}

std::size_t shape_numel(const Shape& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

const char* op_name(OpKind kind) {
  switch (kind) {
    case OpKind::kMatmul: return "matmul";
    case OpKind::kAdd: return "add";
    case OpKind::kSub: return "sub";
    case OpKind::kMul: return "mul";
    case OpKind::kScale: return "scale";
    case OpKind::kShift: return "shift";
    case OpKind::kLeakyRelu: return "leaky_relu";
    case OpKind::kTanh: return "tanh";
    case OpKind::kSigmoid: return "sigmoid";
    case OpKind::kLog: return "log";
    case OpKind::kClamp: return "clamp";
    case OpKind::kMean: return "mean";
    case OpKind::kSum: return "sum";
    case OpKind::kConcat: return "concat";
    case OpKind::kReshape: return "reshape";
    case OpKind::kSlice: return "slice";
    case OpKind::kSoftmaxCrossEntropy: return "softmax_cross_entropy";
  }
  return "unknown";
}

// ---- Tensor ---------------------------------------------------------------

Tensor::Tensor(Shape shape, std::vector<double> values, bool requires_grad) {
  require(shape_numel(shape) == values.size(),
          "tensor: shape " + shape_str(shape) + " does not match " + std::to_string(values.size()) +
              " values");
  node_ = std::make_shared<detail::Node>();
  node_->shape = std::move(shape);
  node_->value = std::move(values);
  node_->requires_grad = requires_grad;
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) { return full(std::move(shape), 0.0, requires_grad); }

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  const auto n = shape_numel(shape);
  return Tensor(std::move(shape), std::vector<double>(n, value), requires_grad);
}

Tensor Tensor::scalar(double value, bool requires_grad) { return Tensor({}, {value}, requires_grad); }

const Shape& Tensor::shape() const { return node_of(*this, "shape")->shape; }

std::size_t Tensor::dim(std::size_t axis) const {
  require(axis < rank(), "dim: axis " + std::to_string(axis) + " out of range for " + shape_str(shape()));
  return shape()[axis];
}

std::size_t Tensor::numel() const { return node_of(*this, "numel")->value.size(); }

std::span<const double> Tensor::data() const { return node_of(*this, "data")->value; }

std::span<double> Tensor::mutable_data() {
  const auto& n = node_of(*this, "mutable_data");
  require(n->is_leaf, "mutable_data: only leaf tensors may be modified in place");
  return n->value;
}

double Tensor::item() const {
  require(numel() == 1, "item: tensor of shape " + shape_str(shape()) + " is not a scalar");
  return node_->value[0];
}

double Tensor::at(std::size_t row, std::size_t col) const {
  require(rank() == 2 && row < dim(0) && col < dim(1), "at: index out of range");
  return node_->value[row * dim(1) + col];
}

bool Tensor::requires_grad() const { return node_of(*this, "requires_grad")->requires_grad; }

void Tensor::set_requires_grad(bool on) {
  const auto& n = node_of(*this, "set_requires_grad");
  require(n->is_leaf, "set_requires_grad: only leaf tensors");
  n->requires_grad = on;
}

bool Tensor::is_leaf() const { return node_of(*this, "is_leaf")->is_leaf; }

bool Tensor::has_grad() const { return !node_of(*this, "grad")->grad.empty() || numel() == 0; }

std::span<const double> Tensor::grad() const {
  require(has_grad(), "grad: tensor has no gradient");
  return node_->grad;
}

std::span<double> Tensor::mutable_grad() {
  require(has_grad(), "grad: tensor has no gradient");
  return node_->grad;
}

void Tensor::zero_grad() {
  auto& n = *node_of(*this, "zero_grad");
  n.grad.assign(n.value.size(), 0.0);
}

void Tensor::clear_grad() { node_of(*this, "clear_grad")->grad.clear(); }

Tensor Tensor::detach() const { return Tensor(shape(), node_->value, false); }

Tensor Tensor::clone() const { return Tensor(shape(), node_->value, node_->requires_grad && node_->is_leaf); }

// ---- tape -----------------------------------------------------------------

ComputationTape& ComputationTape::current() {
  thread_local ComputationTape tape;
  return tape;
}

void ComputationTape::record(TapeEntry entry) { entries_.push_back(std::move(entry)); }

void ComputationTape::clear() { entries_.clear(); }

void backward(const Tensor& loss, const BackwardOptions& options) {
  const auto& ln = node_of(loss, "backward");
  require(ln->value.size() == 1, "backward: loss must be a scalar, got shape " + shape_str(ln->shape));
  auto& tape = ComputationTape::current();
  require(!tape.empty(), "backward: tape is empty");
  const auto& entries = tape.entries();

  std::size_t end = entries.size();
  while (end > 0 && entries[end - 1].output != ln) --end;
  require(end > 0, "backward: loss was not produced by a taped operation");

  std::unordered_set<const detail::Node*> targets;
  for (const auto& t : options.only) targets.insert(node_of(t, "backward").get());
  const bool pruned = !targets.empty();

  // Nodes whose value depends on some target leaf.
  std::unordered_set<const detail::Node*> reaches;
  if (pruned) {
    for (std::size_t i = 0; i < end; ++i) {
      for (const auto& in : entries[i].inputs) {
        if (targets.count(in.get()) || reaches.count(in.get())) {
          reaches.insert(entries[i].output.get());
          break;
        }
      }
    }
  }

  std::unordered_map<const detail::Node*, std::vector<double>> grads;
  grads[ln.get()] = {options.seed};
  std::vector<std::vector<double>*> input_grads;
  for (std::size_t i = end; i-- > 0;) {
    const auto& e = entries[i];
    auto it = grads.find(e.output.get());
    if (it == grads.end()) continue;
    input_grads.assign(e.inputs.size(), nullptr);
    bool any = false;
    for (std::size_t k = 0; k < e.inputs.size(); ++k) {
      auto* in = e.inputs[k].get();
      if (!in->requires_grad) continue;
      if (in->is_leaf) {
        if (pruned && !targets.count(in)) continue;
        if (in->grad.size() != in->value.size()) in->grad.assign(in->value.size(), 0.0);
        input_grads[k] = &in->grad;
      } else {
        if (pruned && !reaches.count(in)) continue;
        auto& buf = grads[in];
        if (buf.empty()) buf.assign(in->value.size(), 0.0);
        input_grads[k] = &buf;
      }
      any = true;
    }
    if (any) e.backward(it->second, input_grads);
    grads.erase(e.output.get());
  }
  if (!options.retain_tape) tape.clear();
}

// ---- ops ------------------------------------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b) {
  const auto& an = node_of(a, "matmul");
  const auto& bn = node_of(b, "matmul");
  require(an->shape.size() == 2 && bn->shape.size() == 2 && an->shape[1] == bn->shape[0],
          "matmul: shape mismatch " + shape_str(an->shape) + " vs " + shape_str(bn->shape));
  const auto m = an->shape[0], k = an->shape[1], n = bn->shape[1];
  std::vector<double> out(m * n);
  MutMap(out.data(), m, n).noalias() = ConstMap(an->value.data(), m, k) * ConstMap(bn->value.data(), k, n);
  detail::Node* ap = an.get();
  detail::Node* bp = bn.get();
  return make_result(OpKind::kMatmul, {m, n}, std::move(out), {an, bn},
                     [ap, bp, m, k, n](std::span<const double> g, std::span<std::vector<double>*> gi) {
                       ConstMap G(g.data(), m, n);
                       if (gi[0]) MutMap(gi[0]->data(), m, k).noalias() += G * ConstMap(bp->value.data(), k, n).transpose();
                       if (gi[1]) MutMap(gi[1]->data(), k, n).noalias() += ConstMap(ap->value.data(), m, k).transpose() * G;
                     });
}

Tensor add(const Tensor& a, const Tensor& b) {
  const auto& an = node_of(a, "add");
  const auto& bn = node_of(b, "add");
  if (an->shape == bn->shape) {
    std::vector<double> out(an->value.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = an->value[i] + bn->value[i];
    return make_result(OpKind::kAdd, an->shape, std::move(out), {an, bn},
                       [](std::span<const double> g, std::span<std::vector<double>*> gi) {
                         for (auto* d : gi)
                           if (d)
                             for (std::size_t i = 0; i < g.size(); ++i) (*d)[i] += g[i];
                       });
  }
  require(an->shape.size() == 2 && bn->shape.size() == 1 && an->shape[1] == bn->shape[0],
          "add: shape mismatch " + shape_str(an->shape) + " vs " + shape_str(bn->shape));
  const auto rows = an->shape[0], cols = an->shape[1];
  std::vector<double> out(an->value.size());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out[r * cols + c] = an->value[r * cols + c] + bn->value[c];
  return make_result(OpKind::kAdd, an->shape, std::move(out), {an, bn},
                     [rows, cols](std::span<const double> g, std::span<std::vector<double>*> gi) {
                       if (gi[0])
                         for (std::size_t i = 0; i < g.size(); ++i) (*gi[0])[i] += g[i];
                       if (gi[1])
                         for (std::size_t r = 0; r < rows; ++r)
                           for (std::size_t c = 0; c < cols; ++c) (*gi[1])[c] += g[r * cols + c];
                     });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  const auto& an = node_of(a, "sub");
  const auto& bn = node_of(b, "sub");
  require(an->shape == bn->shape, "sub: shape mismatch " + shape_str(an->shape) + " vs " + shape_str(bn->shape));
  std::vector<double> out(an->value.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = an->value[i] - bn->value[i];
  return make_result(OpKind::kSub, an->shape, std::move(out), {an, bn},
                     [](std::span<const double> g, std::span<std::vector<double>*> gi) {
                       if (gi[0])
                         for (std::size_t i = 0; i < g.size(); ++i) (*gi[0])[i] += g[i];
                       if (gi[1])
                         for (std::size_t i = 0; i < g.size(); ++i) (*gi[1])[i] -= g[i];
                     });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  const auto& an = node_of(a, "mul");
  const auto& bn = node_of(b, "mul");
  require(an->shape == bn->shape, "mul: shape mismatch " + shape_str(an->shape) + " vs " + shape_str(bn->shape));
  std::vector<double> out(an->value.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = an->value[i] * bn->value[i];
  detail::Node* ap = an.get();
  detail::Node* bp = bn.get();
  return make_result(OpKind::kMul, an->shape, std::move(out), {an, bn},
                     [ap, bp](std::span<const double> g, std::span<std::vector<double>*> gi) {
                       if (gi[0])
                         for (std::size_t i = 0; i < g.size(); ++i) (*gi[0])[i] += g[i] * bp->value[i];
                       if (gi[1])
                         for (std::size_t i = 0; i < g.size(); ++i) (*gi[1])[i] += g[i] * ap->value[i];
                     });
}

Tensor scale(const Tensor& x, double factor) {
  return unary(OpKind::kScale, x, [factor](double v) { return v * factor; },
               [factor](double, double) { return factor; });
}

Tensor shift(const Tensor& x, double offset) {
  return unary(OpKind::kShift, x, [offset](double v) { return v + offset; },
               [](double, double) { return 1.0; });
}

Tensor leaky_relu(const Tensor& x, double alpha) {
  return unary(OpKind::kLeakyRelu, x, [alpha](double v) { return v > 0 ? v : alpha * v; },
               [alpha](double in, double) { return in > 0 ? 1.0 : alpha; });
}

Tensor tanh(const Tensor& x) {
  return unary(OpKind::kTanh, x, [](double v) { return std::tanh(v); },
               [](double, double out) { return 1.0 - out * out; });
}

Tensor sigmoid(const Tensor& x) {
  return unary(OpKind::kSigmoid, x,
               [](double v) {
                 if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
                 const double e = std::exp(v);
                 return e / (1.0 + e);
               },
               [](double, double out) { return out * (1.0 - out); });
}

Tensor log(const Tensor& x) {
  const auto& xn = node_of(x, "log");
  for (double v : xn->value)
    require(!(v <= 0.0), "log: non-positive input " + std::to_string(v) + "; clamp before taking logs");
  return unary(OpKind::kLog, x, [](double v) { return std::log(v); },
               [](double in, double) { return 1.0 / in; });
}

Tensor clamp(const Tensor& x, double lo, double hi) {
  require(lo <= hi, "clamp: lo > hi");
  return unary(OpKind::kClamp, x, [lo, hi](double v) { return std::clamp(v, lo, hi); },
               [lo, hi](double in, double) { return (in >= lo && in <= hi) ? 1.0 : 0.0; });
}

Tensor sum(const Tensor& x) {
  const auto& xn = node_of(x, "sum");
  double s = 0.0;
  for (double v : xn->value) s += v;
  return make_result(OpKind::kSum, {}, {s}, {xn},
                     [](std::span<const double> g, std::span<std::vector<double>*> gi) {
                       for (auto& d : *gi[0]) d += g[0];
                     });
}

Tensor mean(const Tensor& x) {
  const auto& xn = node_of(x, "mean");
  const auto n = xn->value.size();
  require(n > 0, "mean: empty tensor");
  double s = 0.0;
  for (double v : xn->value) s += v;
  const double inv = 1.0 / static_cast<double>(n);
  return make_result(OpKind::kMean, {}, {s * inv}, {xn},
                     [inv](std::span<const double> g, std::span<std::vector<double>*> gi) {
                       for (auto& d : *gi[0]) d += g[0] * inv;
                     });
}

Tensor concat(std::span<const Tensor> parts, std::size_t axis) {
  require(!parts.empty(), "concat: no inputs");
  std::vector<NodePtr> nodes;
  for (const auto& p : parts) nodes.push_back(node_of(p, "concat"));
  const Shape& first = nodes[0]->shape;
  require(axis < first.size(), "concat: axis " + std::to_string(axis) + " out of range for " + shape_str(first));
  Shape out_shape = first;
  out_shape[axis] = 0;
  std::vector<std::size_t> widths;
  for (const auto& n : nodes) {
    bool ok = n->shape.size() == first.size();
    for (std::size_t d = 0; ok && d < first.size(); ++d)
      if (d != axis && n->shape[d] != first[d]) ok = false;
    require(ok, "concat: shape mismatch " + shape_str(first) + " vs " + shape_str(n->shape));
    out_shape[axis] += n->shape[axis];
  }
  const auto [outer, inner] = outer_inner(first, axis);
  for (const auto& n : nodes) widths.push_back(n->shape[axis] * inner);
  const std::size_t row = out_shape[axis] * inner;
  std::vector<double> out(outer * row);
  for (std::size_t o = 0; o < outer; ++o) {
    std::size_t off = 0;
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      std::copy_n(nodes[p]->value.begin() + o * widths[p], widths[p], out.begin() + o * row + off);
      off += widths[p];
    }
  }
  return make_result(OpKind::kConcat, out_shape, std::move(out), nodes,
                     [outer, row, widths](std::span<const double> g, std::span<std::vector<double>*> gi) {
                       for (std::size_t o = 0; o < outer; ++o) {
                         std::size_t off = 0;
                         for (std::size_t p = 0; p < widths.size(); ++p) {
                           if (gi[p])
                             for (std::size_t i = 0; i < widths[p]; ++i)
                               (*gi[p])[o * widths[p] + i] += g[o * row + off + i];
                           off += widths[p];
                         }
                       }
                     });
}

Tensor concat(std::initializer_list<Tensor> parts, std::size_t axis) {
  return concat(std::span<const Tensor>(parts.begin(), parts.size()), axis);
}

Tensor reshape(const Tensor& x, Shape shape) {
  const auto& xn = node_of(x, "reshape");
  require(shape_numel(shape) == xn->value.size(),
          "reshape: cannot view " + shape_str(xn->shape) + " as " + shape_str(shape));
  return make_result(OpKind::kReshape, std::move(shape), xn->value, {xn},
                     [](std::span<const double> g, std::span<std::vector<double>*> gi) {
                       for (std::size_t i = 0; i < g.size(); ++i) (*gi[0])[i] += g[i];
                     });
}

Tensor slice(const Tensor& x, std::size_t axis, std::size_t begin, std::size_t end) {
  const auto& xn = node_of(x, "slice");
  require(axis < xn->shape.size(), "slice: axis out of range for " + shape_str(xn->shape));
  require(begin <= end && end <= xn->shape[axis],
          "slice: range [" + std::to_string(begin) + "," + std::to_string(end) + ") invalid for " +
              shape_str(xn->shape));
  const auto [outer, inner] = outer_inner(xn->shape, axis);
  const std::size_t src_row = xn->shape[axis] * inner;
  const std::size_t dst_row = (end - begin) * inner;
  const std::size_t off = begin * inner;
  Shape out_shape = xn->shape;
  out_shape[axis] = end - begin;
  std::vector<double> out(outer * dst_row);
  for (std::size_t o = 0; o < outer; ++o)
    std::copy_n(xn->value.begin() + o * src_row + off, dst_row, out.begin() + o * dst_row);
  return make_result(OpKind::kSlice, out_shape, std::move(out), {xn},
                     [outer, src_row, dst_row, off](std::span<const double> g, std::span<std::vector<double>*> gi) {
                       for (std::size_t o = 0; o < outer; ++o)
                         for (std::size_t i = 0; i < dst_row; ++i) (*gi[0])[o * src_row + off + i] += g[o * dst_row + i];
                     });
}

Tensor softmax_cross_entropy(const Tensor& logits, std::span<const int> labels) {
  const auto& ln = node_of(logits, "softmax_cross_entropy");
  require(ln->shape.size() == 2 && ln->shape[0] == labels.size() && ln->shape[0] > 0,
          "softmax_cross_entropy: logits " + shape_str(ln->shape) + " vs " + std::to_string(labels.size()) +
              " labels");
  const auto rows = ln->shape[0], cols = ln->shape[1];
  std::vector<double> probs(rows * cols);
  std::vector<int> lab(labels.begin(), labels.end());
  double loss = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    require(lab[r] >= 0 && static_cast<std::size_t>(lab[r]) < cols, "softmax_cross_entropy: label out of range");
    const double* z = ln->value.data() + r * cols;
    const double mx = *std::max_element(z, z + cols);
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += std::exp(z[c] - mx);
    const double lse = mx + std::log(s);
    for (std::size_t c = 0; c < cols; ++c) probs[r * cols + c] = std::exp(z[c] - lse);
    loss -= z[lab[r]] - lse;
  }
  const double inv = 1.0 / static_cast<double>(rows);
  return make_result(OpKind::kSoftmaxCrossEntropy, {}, {loss * inv}, {ln},
                     [probs = std::move(probs), lab = std::move(lab), cols, inv](
                         std::span<const double> g, std::span<std::vector<double>*> gi) {
                       auto& d = *gi[0];
                       for (std::size_t r = 0; r < lab.size(); ++r)
                         for (std::size_t c = 0; c < cols; ++c) {
                           const double target = static_cast<int>(c) == lab[r] ? 1.0 : 0.0;
                           d[r * cols + c] += g[0] * inv * (probs[r * cols + c] - target);
                         }
                     });
}

Tensor gather_rows(const Tensor& x, std::span<const std::size_t> rows) {
  require(x.rank() == 2, "gather_rows: expected rank-2 tensor, got " + shape_str(x.shape()));
  const auto cols = x.dim(1);
  std::vector<double> out(rows.size() * cols);
  const auto src = x.data();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i] < x.dim(0), "gather_rows: row index out of range");
    std::copy_n(src.begin() + rows[i] * cols, cols, out.begin() + i * cols);
  }
  return Tensor({rows.size(), cols}, std::move(out));
}

}  // namespace syncgan
