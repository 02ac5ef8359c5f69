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
#ifndef LESIONKIT_NN_TENSOR_HPP_
#define LESIONKIT_NN_TENSOR_HPP_

#include "lesionkit/core/error.hpp"
#include "lesionkit/core/image.hpp"
#include "lesionkit/core/types.hpp"

namespace lesionkit::nn {

struct Shape3 {
  int c = 0, h = 0, w = 0;
  int size() const { return c * h * w; }
  bool operator==(const Shape3&) const = default;
};

/// Dense CHW feature map backed by one Eigen vector; channel c occupies the
/// contiguous slice [c*h*w, (c+1)*h*w) in row-major (y, x) order.
template <typename T>
struct Tensor3 {
  int c = 0, h = 0, w = 0;
  Vec<T> data;

  Tensor3() = default;
  explicit Tensor3(Shape3 s) : c(s.c), h(s.h), w(s.w), data(Vec<T>::Zero(s.size())) {}

  Shape3 shape() const { return {c, h, w}; }
  int size() const { return c * h * w; }

  void resize(Shape3 s) {
    c = s.c;
    h = s.h;
    w = s.w;
    data.resize(s.size());
  }

  T& at(int ci, int yi, int xi) { return data[(ci * h + yi) * w + xi]; }
  T at(int ci, int yi, int xi) const { return data[(ci * h + yi) * w + xi]; }

  /// View of channel ci as an (h x w) row-major matrix.
  auto channel(int ci) {
    return Eigen::Map<RowMat<T>>(data.data() + static_cast<std::ptrdiff_t>(ci) * h * w, h, w);
  }
  auto channel(int ci) const {
    return Eigen::Map<const RowMat<T>>(data.data() + static_cast<std::ptrdiff_t>(ci) * h * w,
                                       h, w);
  }

  /// View of the whole tensor as a (c x h*w) row-major matrix.
  auto as_matrix() {
    return Eigen::Map<RowMat<T>>(data.data(), c, static_cast<std::ptrdiff_t>(h) * w);
  }
  auto as_matrix() const {
    return Eigen::Map<const RowMat<T>>(data.data(), c, static_cast<std::ptrdiff_t>(h) * w);
  }
};

/// Network input encoding of an image: pixels mapped to [-1, 1] per channel
/// ((p - 127.5) / 127.5), the fixed inference-and-training preprocessing.
template <typename T>
Tensor3<T> to_tensor(const RasterImage& img) {
  Tensor3<T> t(Shape3{RasterImage::kChannels, img.height, img.width});
  for (int c = 0; c < RasterImage::kChannels; ++c) {
    t.channel(c) = (img.ch[static_cast<std::size_t>(c)].template cast<T>().array() -
                    static_cast<T>(127.5)) /
                   static_cast<T>(127.5);
  }
  return t;
}

}  // namespace lesionkit::nn

#endif  // LESIONKIT_NN_TENSOR_HPP_
