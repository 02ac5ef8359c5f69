/* Copyright 2026 The LesionKit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef LESIONKIT_NN_NET_HPP_
#define LESIONKIT_NN_NET_HPP_

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "lesionkit/nn/layers.hpp"

namespace lesionkit::nn {

/// Numerically stable softmax of a logit vector.
template <typename T>
Vec<T> softmax(const Vec<T>& logits) {
  const T m = logits.maxCoeff();
  Vec<T> e = (logits.array() - m).exp();
  return e / e.sum();
}

/// Feed-forward DAG of layers. Node 0 is the input placeholder; add() wires
/// each new node to existing ones (already in topological order by
/// construction). Single-sample execution: forward() keeps per-node
/// activations, loss_and_backward() walks them in reverse.
template <typename T>
class Net {
 public:
  Net() = default;
  explicit Net(Shape3 input_shape) { shapes_.push_back(input_shape); }

  /// Returns the new node's id. `inputs` are node ids (0 = network input).
  int add(std::string name, std::unique_ptr<Layer<T>> layer, std::vector<int> inputs) {
    std::vector<Shape3> in_shapes;
    for (int id : inputs) {
      if (id < 0 || static_cast<std::size_t>(id) >= shapes_.size()) {
        throw ValidationError("Net: bad input node id in " + name);
      }
      in_shapes.push_back(shapes_[static_cast<std::size_t>(id)]);
    }
    shapes_.push_back(layer->out_shape(in_shapes));
    nodes_.push_back(Node{std::move(name), std::move(layer), std::move(inputs)});
    return static_cast<int>(nodes_.size());  // node ids are offset by the input slot
  }

  Shape3 input_shape() const { return shapes_.front(); }
  Shape3 output_shape() const { return shapes_.back(); }
  int num_classes() const { return output_shape().size(); }

  /// Runs the graph; returns the logits (output of the last node). `key`
  /// seeds any stochastic layers for this pass (ignored when !training).
  const Tensor3<T>& forward(const Tensor3<T>& x, bool training, std::uint64_t key = 0) {
    if (x.shape() != input_shape()) throw ValidationError("Net: input shape mismatch");
    acts_.resize(shapes_.size());
    acts_[0] = x;
    std::vector<const Tensor3<T>*> in_ptrs;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      in_ptrs.clear();
      for (int id : nodes_[i].inputs) in_ptrs.push_back(&acts_[static_cast<std::size_t>(id)]);
      nodes_[i].layer->forward(in_ptrs, acts_[i + 1], training,
                               mix_seed(key, static_cast<std::uint64_t>(i)));
    }
    trained_forward_ = training;
    return acts_.back();
  }

  /// Cross-entropy loss against `label` for the activations of the last
  /// forward(training=true) pass; backpropagates and accumulates parameter
  /// gradients. Returns the sample loss.
  T loss_and_backward(int label) {
    if (!trained_forward_) throw ValidationError("Net: backward without a training forward");
    const Tensor3<T>& logits = acts_.back();
    const int n = logits.size();
    if (label < 0 || label >= n) throw ValidationError("Net: label out of range");

    const T m = logits.data.maxCoeff();
    const Vec<T> shifted = logits.data.array() - m;
    const Vec<T> e = shifted.array().exp();
    const T sum = e.sum();
    const T loss = std::log(sum) - shifted[label];

    grads_.resize(shapes_.size());
    for (std::size_t i = 0; i < grads_.size(); ++i) {
      grads_[i].resize(shapes_[i]);
      grads_[i].data.setZero();
    }
    grads_.back().data = e / sum;
    grads_.back().data[label] -= T(1);

    std::vector<Tensor3<T>*> gin_ptrs;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      gin_ptrs.clear();
      for (int id : nodes_[i].inputs) gin_ptrs.push_back(&grads_[static_cast<std::size_t>(id)]);
      nodes_[i].layer->backward(grads_[i + 1], gin_ptrs);
    }
    return loss;
  }

  std::vector<ParamRef<T>> params() {
    std::vector<ParamRef<T>> out;
    for (auto& node : nodes_) node.layer->collect_params(node.name, out);
    return out;
  }

  void zero_grads() {
    for (auto& p : params()) {
      if (p.grad->size() != 0) p.grad->setZero();
    }
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::string name;
    std::unique_ptr<Layer<T>> layer;
    std::vector<int> inputs;
  };

  std::vector<Node> nodes_;
  std::vector<Shape3> shapes_;  // shapes_[0] = input, shapes_[i+1] = node i
  std::vector<Tensor3<T>> acts_;
  std::vector<Tensor3<T>> grads_;
  bool trained_forward_ = false;
};

/// Momentum buffers for SGD, allocated on first use and aligned with
/// Net::params() order.
template <typename T>
struct SgdState {
  std::vector<Mat<T>> velocity;
};

/// One momentum-SGD update from the accumulated gradients of `batch_size`
/// samples: g = grad/batch + wd*w;  v = momentum*v - lr*g;  w += v.
/// With lr = 0 and fresh buffers the parameters are untouched.
template <typename T>
void sgd_update(Net<T>& net, SgdState<T>& state, T lr, T momentum, T weight_decay,
                int batch_size) {
  auto params = net.params();
  if (state.velocity.empty()) {
    state.velocity.reserve(params.size());
    for (auto& p : params) state.velocity.push_back(Mat<T>::Zero(p.value->rows(), p.value->cols()));
  }
  const T inv_batch = T(1) / static_cast<T>(batch_size);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& p = params[i];
    if (p.grad->size() == 0) continue;  // never touched by backward
    Mat<T>& v = state.velocity[i];
    v = momentum * v - lr * (*p.grad * inv_batch + weight_decay * *p.value);
    *p.value += v;
  }
}

}  // namespace lesionkit::nn

#endif  // LESIONKIT_NN_NET_HPP_
