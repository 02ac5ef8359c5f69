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
#ifndef LESIONKIT_AUGMENT_AUGMENT_HPP_
#define LESIONKIT_AUGMENT_AUGMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lesionkit/augment/affine.hpp"
#include "lesionkit/data/manifest.hpp"

namespace lesionkit {

/// Sampling ranges for the geometric augmentation plus the class-rebalancing
/// expansion knobs. Defaults are mild, era-typical ranges.
struct AugmentationConfig {
  double shear_range_deg = 10.0;       // shear ~ U[-r, +r] degrees
  double zoom_min = 0.85;              // zoom ~ U[zoom_min, zoom_max]
  double zoom_max = 1.15;
  double shift_fraction = 0.10;        // shifts ~ U[-f*dim, +f*dim] pixels
  double hflip_prob = 0.5;
  double vflip_prob = 0.5;
  int expansion_cap = 8;               // max outputs per source image
  double global_target_factor = 5.0;   // grow total output to >= factor * input
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draws the transform for (image_id, copy_index) from a stream seeded by
/// mix(cfg.seed, image_id, copy_index); independent of iteration order and
/// worker count. Shift ranges need the pixel extent, hence width/height.
/// copy_index 0 is reserved for the untransformed original (>= 1 here).
AffineParams sample_affine_params(const AugmentationConfig& cfg, std::string_view image_id,
                                  int copy_index, int width, int height);

/// Per-class total outputs per source image (the original counts as one, so a
/// value of 1 means "originals only"). Base value round(n_max/n_c) pulls every
/// class toward the majority count; the smallest integer scale is then applied
/// so that the planned total reaches global_target_factor x input (each class
/// clamped to expansion_cap, so the target may be unreachable; planning stops
/// once every class is capped).
std::map<Diagnosis, int> plan_expansion(const std::map<Diagnosis, std::size_t>& class_counts,
                                        const AugmentationConfig& cfg);

struct AugmentedEntry {
  std::string image_id;
  int copy_index = 0;
  AffineParams params;  // identity for copy_index 0
  std::filesystem::path path;
};

/// Listing of one expanded dataset: (image_id, copy_index) unique, copy 0 is
/// the untransformed original.
struct AugmentedManifest {
  std::vector<AugmentedEntry> entries;
  std::size_t size() const { return entries.size(); }
};

inline constexpr const char* kAugmentedHeader[] = {
    "image_id", "copy_index", "shear_deg", "zoom", "shift_x", "shift_y",
    "hflip",    "vflip",      "path"};

/// Materializes the expansion plan: writes {image_id}_aug{k}.png per planned
/// copy (k=0 the original) plus augmented.csv into out_dir, and returns the
/// manifest. Bit-identical for identical (train, cfg). Refuses a non-empty
/// out_dir unless overwrite is set.
AugmentedManifest expand_dataset(const DatasetManifest& train, const AugmentationConfig& cfg,
                                 const std::filesystem::path& out_dir, bool overwrite = false);

void write_augmented_csv(const AugmentedManifest& manifest, const std::filesystem::path& path);
AugmentedManifest read_augmented_csv(const std::filesystem::path& path);

}  // namespace lesionkit

#endif  // LESIONKIT_AUGMENT_AUGMENT_HPP_
