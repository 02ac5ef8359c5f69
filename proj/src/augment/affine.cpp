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
#include "lesionkit/augment/affine.hpp"

#include <cmath>
#include <numbers>

#include "lesionkit/core/error.hpp"

namespace lesionkit {

bool operator==(const AffineParams& a, const AffineParams& b) {
  return a.shear_deg == b.shear_deg && a.zoom == b.zoom && a.shift_x == b.shift_x &&
         a.shift_y == b.shift_y && a.hflip == b.hflip && a.vflip == b.vflip;
}

namespace {

// Bilinear read at (x, y); source pixels outside the image contribute black.
inline double sample_bilinear(const Mat<std::uint8_t>& plane, double x, double y, int w,
                              int h) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  double acc = 0.0;
  for (int dy = 0; dy <= 1; ++dy) {
    const int yy = y0 + dy;
    if (yy < 0 || yy >= h) continue;
    const double wy = dy ? fy : 1.0 - fy;
    if (wy == 0.0) continue;
    for (int dx = 0; dx <= 1; ++dx) {
      const int xx = x0 + dx;
      if (xx < 0 || xx >= w) continue;
      const double wx = dx ? fx : 1.0 - fx;
      if (wx == 0.0) continue;
      acc += wy * wx * static_cast<double>(plane(yy, xx));
    }
  }
  return acc;
}

// Bilinear read with edge clamping, the usual resize convention.
inline double sample_bilinear_clamped(const Mat<std::uint8_t>& plane, double x, double y,
                                      int w, int h) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  auto cl = [](int v, int hi) { return v < 0 ? 0 : v >= hi ? hi - 1 : v; };
  const int xa = cl(x0, w), xb = cl(x0 + 1, w);
  const int ya = cl(y0, h), yb = cl(y0 + 1, h);
  return (1.0 - fy) * ((1.0 - fx) * plane(ya, xa) + fx * plane(ya, xb)) +
         fy * ((1.0 - fx) * plane(yb, xa) + fx * plane(yb, xb));
}

inline std::uint8_t to_u8(double v) {
  const long r = std::lround(v);
  return static_cast<std::uint8_t>(r < 0 ? 0 : r > 255 ? 255 : r);
}

}  // namespace

RasterImage apply_affine(const RasterImage& img, const AffineParams& p) {
  const int w = img.width;
  const int h = img.height;
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;

  // Forward map about the center: v_out = Z * Sh * F * v_in + t, so the
  // inverse linear part is F * Sh^-1 / z (flips are involutions).
  const double tan_shear = std::tan(p.shear_deg * std::numbers::pi / 180.0);
  const double inv_zoom = 1.0 / p.zoom;
  const double fx = p.hflip ? -1.0 : 1.0;
  const double fy = p.vflip ? -1.0 : 1.0;
  // [a b; 0 d] = F * [1 -tan; 0 1] * (1/z)
  const double a = fx * inv_zoom;
  const double b = fx * -tan_shear * inv_zoom;
  const double d = fy * inv_zoom;

  RasterImage out(w, h);
  for (int y = 0; y < h; ++y) {
    const double vy = (y - cy) - p.shift_y;
    for (int x = 0; x < w; ++x) {
      const double vx = (x - cx) - p.shift_x;
      const double sx = a * vx + b * vy + cx;
      const double sy = d * vy + cy;
      for (int c = 0; c < RasterImage::kChannels; ++c) {
        out.ch[static_cast<std::size_t>(c)](y, x) =
            to_u8(sample_bilinear(img.ch[static_cast<std::size_t>(c)], sx, sy, w, h));
      }
    }
  }
  return out;
}

RasterImage resize_bilinear(const RasterImage& img, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw ValidationError("resize_bilinear: degenerate target");
  const double sx = static_cast<double>(img.width) / out_w;
  const double sy = static_cast<double>(img.height) / out_h;
  RasterImage out(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    const double v = (y + 0.5) * sy - 0.5;
    for (int x = 0; x < out_w; ++x) {
      const double u = (x + 0.5) * sx - 0.5;
      for (int c = 0; c < RasterImage::kChannels; ++c) {
        out.ch[static_cast<std::size_t>(c)](y, x) = to_u8(
            sample_bilinear_clamped(img.ch[static_cast<std::size_t>(c)], u, v, img.width,
                                    img.height));
      }
    }
  }
  return out;
}

RasterImage resize_preserve_aspect(const RasterImage& img, int target) {
  if (target < 1) throw ValidationError("resize_preserve_aspect: target must be >= 1");
  if (img.width < 1 || img.height < 1) {
    throw ValidationError("resize_preserve_aspect: degenerate image");
  }
  const int longest = std::max(img.width, img.height);
  const int cw = img.width == longest
                     ? target
                     : static_cast<int>(std::lround(static_cast<double>(img.width) * target / longest));
  const int chh = img.height == longest
                      ? target
                      : static_cast<int>(std::lround(static_cast<double>(img.height) * target / longest));
  const RasterImage content = resize_bilinear(img, std::max(cw, 1), std::max(chh, 1));

  if (content.width == target && content.height == target) return content;

  RasterImage canvas(target, target);
  const int x0 = (target - content.width) / 2;
  const int y0 = (target - content.height) / 2;
  for (int c = 0; c < RasterImage::kChannels; ++c) {
    canvas.ch[static_cast<std::size_t>(c)].block(y0, x0, content.height, content.width) =
        content.ch[static_cast<std::size_t>(c)];
  }
  return canvas;
}

RasterImage crop(const RasterImage& img, int x0, int y0, int cw, int chh) {
  if (x0 < 0 || y0 < 0 || cw < 1 || chh < 1 || x0 + cw > img.width || y0 + chh > img.height) {
    throw ValidationError("crop: window outside image");
  }
  RasterImage out(cw, chh);
  for (int c = 0; c < RasterImage::kChannels; ++c) {
    out.ch[static_cast<std::size_t>(c)] =
        img.ch[static_cast<std::size_t>(c)].block(y0, x0, chh, cw);
  }
  return out;
}

RasterImage random_crop(const RasterImage& img, int target, RngStream& rng) {
  if (img.width < target || img.height < target) {
    throw ValidationError("random_crop: input smaller than crop target");
  }
  const int x0 = static_cast<int>(rng.uniform_int(img.width - target + 1));
  const int y0 = static_cast<int>(rng.uniform_int(img.height - target + 1));
  return crop(img, x0, y0, target, target);
}

RasterImage center_crop(const RasterImage& img, int target) {
  if (img.width < target || img.height < target) {
    throw ValidationError("center_crop: input smaller than crop target");
  }
  return crop(img, (img.width - target) / 2, (img.height - target) / 2, target, target);
}

}  // namespace lesionkit
