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
#ifndef LESIONKIT_NN_MODEL_HPP_
#define LESIONKIT_NN_MODEL_HPP_

#include <cmath>
#include <span>
#include <sstream>
#include <unordered_map>

#include "lesionkit/nn/checkpoint.hpp"

namespace lesionkit::nn {

/// A trainable classifier: the layer graph, its epoch tag and the stream
/// state feeding stochastic layers. Single-writer during training; read-only
/// inference on a settled state is safe to share.
template <typename T>
struct ModelState {
  BackboneSpec spec;
  Net<T> net;
  int epoch = 0;
  std::uint64_t rng_base = 0;  // base key for in-graph randomness (dropout)
  std::uint64_t rng_step = 0;  // sgd steps taken, advances the key
  SgdState<T> sgd;             // momentum buffers; deliberately not serialized
};

/// He-normal weights (std = sqrt(2/fan_in)), zero biases, drawn in parameter
/// order from one stream so the result is a pure function of the seed.
template <typename T>
void init_params(Net<T>& net, std::uint64_t seed) {
  RngStream rng(mix_seed(seed, "init"));
  for (auto& p : net.params()) {
    if (p.name.ends_with(".bias")) {
      p.value->setZero();
      continue;
    }
    const double std_dev = std::sqrt(2.0 / static_cast<double>(p.value->cols()));
    T* data = p.value->data();
    for (Eigen::Index i = 0; i < p.value->size(); ++i) {
      data[i] = static_cast<T>(rng.normal() * std_dev);
    }
  }
}

namespace detail {

template <typename T>
bool model_has_param(ModelState<T>& model, const std::string& name) {
  for (auto& p : model.net.params()) {
    if (p.name == name) return true;
  }
  return false;
}

template <typename T>
void load_pretrained(ModelState<T>& model, const std::filesystem::path& path) {
  const CheckpointData<T> data = read_checkpoint_file<T>(path);
  if (data.header.architecture != model.spec.architecture) {
    throw ValidationError("pretrained checkpoint architecture (" +
                          std::string(to_string(data.header.architecture)) +
                          ") does not match spec (" +
                          std::string(to_string(model.spec.architecture)) + "): " +
                          path.string());
  }
  std::unordered_map<std::string, const Mat<T>*> by_name;
  for (const auto& t : data.tensors) by_name[t.name] = &t.value;

  const std::string head(final_layer_name(model.spec.architecture));
  std::size_t used = 0;
  for (auto& p : model.net.params()) {
    if (p.name.starts_with(head + ".")) continue;  // re-initialized for num_classes
    auto it = by_name.find(p.name);
    if (it == by_name.end()) {
      throw ValidationError("pretrained checkpoint is missing tensor " + p.name + ": " +
                            path.string());
    }
    if (it->second->rows() != p.value->rows() || it->second->cols() != p.value->cols()) {
      std::ostringstream msg;
      msg << "pretrained tensor " << p.name << " has shape " << it->second->rows() << "x"
          << it->second->cols() << ", expected " << p.value->rows() << "x" << p.value->cols()
          << ": " << path.string();
      throw ValidationError(msg.str());
    }
    *p.value = *it->second;
    ++used;
  }
  // Anything left over besides the donor's own head means a different graph.
  for (const auto& t : data.tensors) {
    if (!t.name.starts_with(head + ".") && !model_has_param(model, t.name)) {
      throw ValidationError("pretrained checkpoint has unexpected tensor " + t.name + ": " +
                            path.string());
    }
  }
  (void)used;
}

}  // namespace detail

/// Constructs and initializes a model. With spec.pretrained_ref set, all
/// tensors except the classifier head come from the checkpoint (the head is
/// freshly initialized for spec.num_classes); otherwise everything is seeded
/// random init.
template <typename T>
ModelState<T> build_model(const BackboneSpec& spec, std::uint64_t init_seed) {
  spec.validate();
  ModelState<T> model{spec, make_backbone<T>(spec), 0, mix_seed(init_seed, "stochastic"), 0, {}};
  init_params(model.net, init_seed);
  if (spec.pretrained_ref) detail::load_pretrained(model, *spec.pretrained_ref);
  return model;
}

template <typename T>
nn::Tensor3<T> to_input_tensor(const ModelState<T>& model, const RasterImage& img) {
  if (img.width != model.spec.input_size || img.height != model.spec.input_size) {
    std::ostringstream msg;
    msg << "image size " << img.width << "x" << img.height << " does not match model input "
        << model.spec.input_size;
    throw ValidationError(msg.str());
  }
  return to_tensor<T>(img);
}

/// Deterministic inference: one normalized probability vector per image.
template <typename T>
std::vector<VecD> forward_softmax(ModelState<T>& model, std::span<const RasterImage> batch) {
  std::vector<VecD> out;
  out.reserve(batch.size());
  for (const RasterImage& img : batch) {
    const Tensor3<T> x = to_input_tensor(model, img);
    const Tensor3<T>& logits = model.net.forward(x, /*training=*/false);
    out.push_back(softmax<T>(logits.data).template cast<double>());
  }
  return out;
}

template <typename T>
VecD forward_softmax_one(ModelState<T>& model, const RasterImage& img) {
  return forward_softmax(model, std::span<const RasterImage>(&img, 1)).front();
}

/// One momentum-SGD step on the mean cross-entropy of the batch. Returns the
/// batch mean loss. Throws TrainingError (naming lr and the batch ids, when
/// given) if the loss goes non-finite.
template <typename T>
T sgd_step(ModelState<T>& model, std::span<const RasterImage> batch, std::span<const int> labels,
           T lr, T momentum, T weight_decay, std::span<const std::string> ids = {}) {
  if (batch.empty()) throw ValidationError("sgd_step: empty batch");
  if (batch.size() != labels.size()) throw ValidationError("sgd_step: labels/batch mismatch");
  if (!(lr >= T(0))) throw ValidationError("sgd_step: negative learning rate");

  model.net.zero_grads();
  T total = T(0);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Tensor3<T> x = to_input_tensor(model, batch[i]);
    model.net.forward(x, /*training=*/true, mix_seed(model.rng_base, model.rng_step, i));
    total += model.net.loss_and_backward(labels[i]);
  }
  const T mean_loss = total / static_cast<T>(batch.size());
  if (!std::isfinite(static_cast<double>(mean_loss))) {
    std::ostringstream msg;
    msg << "non-finite training loss at lr=" << static_cast<double>(lr);
    if (!ids.empty()) {
      msg << ", batch=[";
      for (std::size_t i = 0; i < ids.size(); ++i) msg << (i ? "," : "") << ids[i];
      msg << "]";
    }
    throw TrainingError(msg.str());
  }
  sgd_update(model.net, model.sgd, lr, momentum, weight_decay,
             static_cast<int>(batch.size()));
  ++model.rng_step;
  return mean_loss;
}

/// Weights-only serialization; momentum buffers are training-transient.
/// Round-tripping reproduces forward_softmax bit-exactly.
template <typename T>
void save_checkpoint(ModelState<T>& model, const std::filesystem::path& path) {
  CheckpointData<T> data;
  data.header.architecture = model.spec.architecture;
  data.header.input_size = model.spec.input_size;
  data.header.num_classes = model.spec.num_classes;
  data.header.random_crop_from = model.spec.random_crop_from.value_or(-1);
  data.header.epoch = model.epoch;
  data.header.rng_base = model.rng_base;
  data.header.rng_step = model.rng_step;
  for (auto& p : model.net.params()) data.tensors.push_back({p.name, *p.value});
  write_checkpoint_file(data, path);
}

/// Rebuilds the exact model a checkpoint was saved from. When `expected` is
/// given, its architecture/geometry must match the file.
template <typename T>
ModelState<T> load_checkpoint(const std::filesystem::path& path,
                              const BackboneSpec* expected = nullptr) {
  const CheckpointData<T> data = read_checkpoint_file<T>(path);
  BackboneSpec spec;
  spec.architecture = data.header.architecture;
  spec.input_size = data.header.input_size;
  spec.num_classes = data.header.num_classes;
  if (data.header.random_crop_from >= 0) spec.random_crop_from = data.header.random_crop_from;
  spec.validate();
  if (expected && !(expected->architecture == spec.architecture &&
                    expected->input_size == spec.input_size &&
                    expected->num_classes == spec.num_classes &&
                    expected->random_crop_from == spec.random_crop_from)) {
    throw ValidationError("checkpoint does not match the expected model spec: " + path.string());
  }

  ModelState<T> model{spec, make_backbone<T>(spec), data.header.epoch, data.header.rng_base,
                      data.header.rng_step, {}};
  std::unordered_map<std::string, const Mat<T>*> by_name;
  for (const auto& t : data.tensors) by_name[t.name] = &t.value;
  std::size_t used = 0;
  for (auto& p : model.net.params()) {
    auto it = by_name.find(p.name);
    if (it == by_name.end()) {
      throw ValidationError("checkpoint is missing tensor " + p.name + ": " + path.string());
    }
    if (it->second->rows() != p.value->rows() || it->second->cols() != p.value->cols()) {
      throw ValidationError("checkpoint tensor " + p.name + " has the wrong shape: " +
                            path.string());
    }
    *p.value = *it->second;
    ++used;
  }
  if (used != data.tensors.size()) {
    throw ValidationError("checkpoint carries unknown tensors: " + path.string());
  }
  return model;
}

}  // namespace lesionkit::nn

#endif  // LESIONKIT_NN_MODEL_HPP_
