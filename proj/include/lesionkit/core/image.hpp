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
#ifndef LESIONKIT_CORE_IMAGE_HPP_
#define LESIONKIT_CORE_IMAGE_HPP_

#include <array>
#include <cstdint>

#include "lesionkit/core/error.hpp"
#include "lesionkit/core/types.hpp"

namespace lesionkit {

/// 8-bit RGB raster, stored planar. Channel matrices are height x width
/// (rows are scanlines), which keeps Eigen block expressions natural.
struct RasterImage {
  static constexpr int kChannels = 3;

  int width = 0;
  int height = 0;
  std::array<Mat<std::uint8_t>, kChannels> ch;

  RasterImage() = default;
  RasterImage(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw ValidationError("RasterImage: degenerate dimensions");
    for (auto& c : ch) c = Mat<std::uint8_t>::Zero(h, w);
  }

  static RasterImage filled(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    RasterImage img(w, h);
    img.ch[0].setConstant(r);
    img.ch[1].setConstant(g);
    img.ch[2].setConstant(b);
    return img;
  }

  std::uint8_t& at(int c, int y, int x) { return ch[static_cast<std::size_t>(c)](y, x); }
  std::uint8_t at(int c, int y, int x) const { return ch[static_cast<std::size_t>(c)](y, x); }

  bool same_size(const RasterImage& o) const { return width == o.width && height == o.height; }
};

inline bool operator==(const RasterImage& a, const RasterImage& b) {
  if (!a.same_size(b)) return false;
  for (int c = 0; c < RasterImage::kChannels; ++c) {
    if (a.ch[static_cast<std::size_t>(c)] != b.ch[static_cast<std::size_t>(c)]) return false;
  }
  return true;
}

inline bool operator!=(const RasterImage& a, const RasterImage& b) { return !(a == b); }

}  // namespace lesionkit

#endif  // LESIONKIT_CORE_IMAGE_HPP_
