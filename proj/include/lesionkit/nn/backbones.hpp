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
#ifndef LESIONKIT_NN_BACKBONES_HPP_
#define LESIONKIT_NN_BACKBONES_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lesionkit/nn/net.hpp"

namespace lesionkit::nn {

enum class Architecture { AlexNetStyle, GoogleNetStyle, TinySurrogate };

std::string_view to_string(Architecture a);
Architecture parse_architecture(std::string_view s);

/// Which trainable classifier to build. input_size is the square side the
/// network consumes; when random_crop_from is set, training data is resized
/// to that side and randomly cropped down to input_size (center crop at
/// inference).
struct BackboneSpec {
  Architecture architecture = Architecture::TinySurrogate;
  int input_size = 32;
  int num_classes = 2;
  std::optional<std::filesystem::path> pretrained_ref;
  std::optional<int> random_crop_from;

  /// Side images must be resized to before any cropping.
  int resize_target() const { return random_crop_from.value_or(input_size); }

  void validate() const;
  bool operator==(const BackboneSpec&) const = default;
};

/// Name of the classifier head node; its tensors are re-initialized when
/// fine-tuning from a checkpoint with a different class count.
std::string_view final_layer_name(Architecture a);

inline std::string_view to_string(Architecture a) {
  switch (a) {
    case Architecture::AlexNetStyle: return "alexnet";
    case Architecture::GoogleNetStyle: return "googlenet";
    case Architecture::TinySurrogate: return "tiny";
  }
  return "?";
}

inline Architecture parse_architecture(std::string_view s) {
  if (s == "alexnet") return Architecture::AlexNetStyle;
  if (s == "googlenet") return Architecture::GoogleNetStyle;
  if (s == "tiny") return Architecture::TinySurrogate;
  throw ValidationError("unknown architecture: " + std::string(s));
}

inline std::string_view final_layer_name(Architecture a) {
  return a == Architecture::AlexNetStyle ? "fc8" : "fc";
}

inline void BackboneSpec::validate() const {
  if (num_classes < 2) throw ValidationError("BackboneSpec: num_classes must be >= 2");
  switch (architecture) {
    case Architecture::AlexNetStyle:
      if (input_size != 224 && input_size != 350) {
        throw ValidationError("BackboneSpec: alexnet input_size must be 224 or 350, got " +
                              std::to_string(input_size));
      }
      if (random_crop_from) {
        throw ValidationError("BackboneSpec: alexnet takes no random_crop_from");
      }
      break;
    case Architecture::GoogleNetStyle:
      if (input_size != 224) {
        throw ValidationError("BackboneSpec: googlenet input_size must be 224, got " +
                              std::to_string(input_size));
      }
      if (random_crop_from && *random_crop_from != 256) {
        throw ValidationError("BackboneSpec: googlenet random_crop_from must be 256");
      }
      break;
    case Architecture::TinySurrogate:
      if (input_size < 8) {
        throw ValidationError("BackboneSpec: tiny input_size must be >= 8");
      }
      if (random_crop_from && *random_crop_from <= input_size) {
        throw ValidationError("BackboneSpec: random_crop_from must exceed input_size");
      }
      break;
  }
}

namespace detail {

/// Conv + ReLU pair; returns the ReLU node id.
template <typename T>
int conv_relu(Net<T>& net, const std::string& name, int input, int in_c, int out_c, int k,
              int stride, int pad) {
  const int conv = net.add(name, std::make_unique<Conv2d<T>>(in_c, out_c, k, stride, pad),
                           {input});
  return net.add(name + ".relu", std::make_unique<ReLU<T>>(), {conv});
}

/// Classic four-branch inception block; returns the concat node id.
template <typename T>
int inception(Net<T>& net, const std::string& name, int input, int in_c, int c1, int c3r,
              int c3, int c5r, int c5, int pool_proj) {
  const int b1 = conv_relu(net, name + ".b1", input, in_c, c1, 1, 1, 0);
  const int b2r = conv_relu(net, name + ".b2reduce", input, in_c, c3r, 1, 1, 0);
  const int b2 = conv_relu(net, name + ".b2", b2r, c3r, c3, 3, 1, 1);
  const int b3r = conv_relu(net, name + ".b3reduce", input, in_c, c5r, 1, 1, 0);
  const int b3 = conv_relu(net, name + ".b3", b3r, c5r, c5, 5, 1, 2);
  const int pool = net.add(name + ".pool", std::make_unique<MaxPool2d<T>>(3, 1, 1), {input});
  const int b4 = conv_relu(net, name + ".b4", pool, in_c, pool_proj, 1, 1, 0);
  return net.add(name + ".concat", std::make_unique<Concat<T>>(), {b1, b2, b3, b4});
}

}  // namespace detail

/// Builds the layer graph for `spec` with zeroed parameters (see
/// init_params / build_model for weight initialization).
///
/// AlexNetStyle follows the classic 5-conv/3-fc stack (96/256/384/384/256
/// channels, ungrouped convolutions, no local response normalization) with an
/// adaptive 6x6 average pool ahead of fc6 so both 224 and 350 inputs feed the
/// same classifier shapes.
/// GoogleNetStyle is the 9-block inception v1 graph without the auxiliary
/// training heads (they never contribute at inference).
/// TinySurrogate is a two-conv toy classifier for desk-scale tests.
template <typename T>
Net<T> make_backbone(const BackboneSpec& spec) {
  spec.validate();
  Net<T> net(Shape3{3, spec.input_size, spec.input_size});
  using detail::conv_relu;
  using detail::inception;

  switch (spec.architecture) {
    case Architecture::AlexNetStyle: {
      int n = conv_relu(net, "conv1", 0, 3, 96, 11, 4, 2);
      n = net.add("pool1", std::make_unique<MaxPool2d<T>>(3, 2), {n});
      n = conv_relu(net, "conv2", n, 96, 256, 5, 1, 2);
      n = net.add("pool2", std::make_unique<MaxPool2d<T>>(3, 2), {n});
      n = conv_relu(net, "conv3", n, 256, 384, 3, 1, 1);
      n = conv_relu(net, "conv4", n, 384, 384, 3, 1, 1);
      n = conv_relu(net, "conv5", n, 384, 256, 3, 1, 1);
      n = net.add("pool5", std::make_unique<MaxPool2d<T>>(3, 2), {n});
      n = net.add("adapt_pool", std::make_unique<AdaptiveAvgPool<T>>(6, 6), {n});
      n = net.add("fc6", std::make_unique<Linear<T>>(256 * 6 * 6, 4096), {n});
      n = net.add("fc6.relu", std::make_unique<ReLU<T>>(), {n});
      n = net.add("drop6", std::make_unique<Dropout<T>>(0.5), {n});
      n = net.add("fc7", std::make_unique<Linear<T>>(4096, 4096), {n});
      n = net.add("fc7.relu", std::make_unique<ReLU<T>>(), {n});
      n = net.add("drop7", std::make_unique<Dropout<T>>(0.5), {n});
      net.add("fc8", std::make_unique<Linear<T>>(4096, spec.num_classes), {n});
      break;
    }
    case Architecture::GoogleNetStyle: {
      int n = conv_relu(net, "conv1", 0, 3, 64, 7, 2, 3);
      n = net.add("pool1", std::make_unique<MaxPool2d<T>>(3, 2, 0, true), {n});
      n = conv_relu(net, "conv2reduce", n, 64, 64, 1, 1, 0);
      n = conv_relu(net, "conv2", n, 64, 192, 3, 1, 1);
      n = net.add("pool2", std::make_unique<MaxPool2d<T>>(3, 2, 0, true), {n});
      n = inception(net, "3a", n, 192, 64, 96, 128, 16, 32, 32);
      n = inception(net, "3b", n, 256, 128, 128, 192, 32, 96, 64);
      n = net.add("pool3", std::make_unique<MaxPool2d<T>>(3, 2, 0, true), {n});
      n = inception(net, "4a", n, 480, 192, 96, 208, 16, 48, 64);
      n = inception(net, "4b", n, 512, 160, 112, 224, 24, 64, 64);
      n = inception(net, "4c", n, 512, 128, 128, 256, 24, 64, 64);
      n = inception(net, "4d", n, 512, 112, 144, 288, 32, 64, 64);
      n = inception(net, "4e", n, 528, 256, 160, 320, 32, 128, 128);
      n = net.add("pool4", std::make_unique<MaxPool2d<T>>(3, 2, 0, true), {n});
      n = inception(net, "5a", n, 832, 256, 160, 320, 32, 128, 128);
      n = inception(net, "5b", n, 832, 384, 192, 384, 48, 128, 128);
      n = net.add("gap", std::make_unique<AdaptiveAvgPool<T>>(1, 1), {n});
      n = net.add("drop", std::make_unique<Dropout<T>>(0.4), {n});
      net.add("fc", std::make_unique<Linear<T>>(1024, spec.num_classes), {n});
      break;
    }
    case Architecture::TinySurrogate: {
      int n = conv_relu(net, "conv1", 0, 3, 8, 3, 1, 1);
      n = net.add("pool1", std::make_unique<MaxPool2d<T>>(2, 2), {n});
      n = conv_relu(net, "conv2", n, 8, 16, 3, 1, 1);
      n = net.add("pool2", std::make_unique<MaxPool2d<T>>(2, 2), {n});
      n = net.add("gap", std::make_unique<AdaptiveAvgPool<T>>(1, 1), {n});
      net.add("fc", std::make_unique<Linear<T>>(16, spec.num_classes), {n});
      break;
    }
  }
  return net;
}

}  // namespace lesionkit::nn

#endif  // LESIONKIT_NN_BACKBONES_HPP_
