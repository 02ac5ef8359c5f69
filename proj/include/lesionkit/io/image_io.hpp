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
#ifndef LESIONKIT_IO_IMAGE_IO_HPP_
#define LESIONKIT_IO_IMAGE_IO_HPP_

#include <filesystem>

#include "lesionkit/core/image.hpp"

namespace lesionkit {

/// Decodes a PNG or JPEG file (sniffed by signature) to 8-bit RGB.
/// Grayscale, palette and alpha inputs are expanded/stripped to RGB.
RasterImage load_image(const std::filesystem::path& path);

/// Encodes as 8-bit RGB PNG. Output bytes are deterministic for equal pixels.
void save_png(const RasterImage& img, const std::filesystem::path& path);

}  // namespace lesionkit

#endif  // LESIONKIT_IO_IMAGE_IO_HPP_
