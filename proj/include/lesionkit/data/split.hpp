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
#ifndef LESIONKIT_DATA_SPLIT_HPP_
#define LESIONKIT_DATA_SPLIT_HPP_

#include <cstdint>
#include <filesystem>

#include "lesionkit/data/manifest.hpp"

namespace lesionkit {

/// Round-half-to-even, used to pin the per-class validation count.
double round_half_even(double x);

struct DatasetSplit {
  DatasetManifest train;
  DatasetManifest validation;
  double fraction = 0.0;
  std::uint64_t seed = 0;
};

/// Stratified train/validation split. Per class, exactly
/// round_half_even(fraction * class_count) records go to validation; the
/// selection within each class is a seeded shuffle keyed by (seed, class), so
/// adding records of one class never perturbs another class's choice. Both
/// sub-manifests preserve the input record order.
DatasetSplit stratified_split(const DatasetManifest& manifest, double fraction,
                              std::uint64_t seed);

/// Writes train.csv, val.csv (ground-truth format) and split.meta into out_dir.
void write_split(const DatasetSplit& split, const std::filesystem::path& out_dir);

}  // namespace lesionkit

#endif  // LESIONKIT_DATA_SPLIT_HPP_
