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
#ifndef LESIONKIT_AUGMENT_AFFINE_HPP_
#define LESIONKIT_AUGMENT_AFFINE_HPP_

#include "lesionkit/core/image.hpp"
#include "lesionkit/core/rng.hpp"

namespace lesionkit {

/// One sampled geometric transform. Applied in the fixed order
/// flips -> shear -> zoom (about the image center) -> shift.
struct AffineParams {
  double shear_deg = 0.0;  // horizontal shear angle
  double zoom = 1.0;       // >1 magnifies the content
  double shift_x = 0.0;    // pixels, positive moves content right
  double shift_y = 0.0;    // pixels, positive moves content down
  bool hflip = false;
  bool vflip = false;

  bool is_identity() const {
    return shear_deg == 0.0 && zoom == 1.0 && shift_x == 0.0 && shift_y == 0.0 && !hflip &&
           !vflip;
  }
};

bool operator==(const AffineParams& a, const AffineParams& b);

/// Warps the image by `p` keeping its dimensions. Sampling is bilinear via the
/// inverse map; anything pulled from outside the source is black. The identity
/// transform reproduces the input bit-exactly, and a pure flip is an exact
/// pixel permutation.
RasterImage apply_affine(const RasterImage& img, const AffineParams& p);

/// Plain bilinear resize to out_w x out_h (half-pixel-center convention;
/// equal sizes are a bit-exact no-op).
RasterImage resize_bilinear(const RasterImage& img, int out_w, int out_h);

/// Scales the longest side to `target`, keeping the aspect ratio, and centers
/// the result on a black target x target canvas (extra row/column goes to the
/// bottom/right).
RasterImage resize_preserve_aspect(const RasterImage& img, int target);

/// Rectangular window copy; the window must lie inside the image.
RasterImage crop(const RasterImage& img, int x0, int y0, int w, int h);

/// Square crop of side `target` at offsets drawn uniformly from
/// [0, w-target] x [0, h-target]. Requires both dimensions >= target.
RasterImage random_crop(const RasterImage& img, int target, RngStream& rng);

/// Deterministic center crop (offsets floor((size-target)/2)); the
/// inference-time counterpart of random_crop.
RasterImage center_crop(const RasterImage& img, int target);

}  // namespace lesionkit

#endif  // LESIONKIT_AUGMENT_AFFINE_HPP_
