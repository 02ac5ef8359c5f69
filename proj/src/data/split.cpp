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
#include "lesionkit/data/split.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "lesionkit/core/csv.hpp"
#include "lesionkit/core/error.hpp"
#include "lesionkit/core/rng.hpp"

namespace lesionkit {

double round_half_even(double x) {
  const double f = std::floor(x);
  const double diff = x - f;
  if (diff > 0.5) return f + 1.0;
  if (diff < 0.5) return f;
  return std::fmod(f, 2.0) == 0.0 ? f : f + 1.0;
}

DatasetSplit stratified_split(const DatasetManifest& manifest, double fraction,
                              std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ValidationError("split fraction must be in (0,1), got " + std::to_string(fraction));
  }

  // Record indices per class, in input order.
  std::map<Diagnosis, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    by_class[manifest.records[i].diagnosis].push_back(i);
  }
  for (const auto& [diag, idx] : by_class) {
    if (idx.empty()) throw ValidationError(std::string("empty class: ") + std::string(to_string(diag)));
  }

  std::vector<bool> in_validation(manifest.size(), false);
  for (auto& [diag, idx] : by_class) {
    const auto k = static_cast<std::size_t>(
        round_half_even(fraction * static_cast<double>(idx.size())));
    // Seed mixed with the class id so each class's selection is independent.
    RngStream rng(mix_seed(seed, "stratified_split", static_cast<std::uint64_t>(diag)));
    std::vector<std::size_t> shuffled = idx;
    rng.shuffle(shuffled);
    for (std::size_t j = 0; j < k; ++j) in_validation[shuffled[j]] = true;
  }

  DatasetSplit split;
  split.fraction = fraction;
  split.seed = seed;
  split.train.source_tag = manifest.source_tag + "#train";
  split.validation.source_tag = manifest.source_tag + "#val";
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    (in_validation[i] ? split.validation : split.train).records.push_back(manifest.records[i]);
  }
  return split;
}

void write_split(const DatasetSplit& split, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_manifest_csv(split.train, out_dir / "train.csv");
  write_manifest_csv(split.validation, out_dir / "val.csv");

  std::ostringstream meta;
  meta << "fraction = " << split.fraction << "\n";
  meta << "seed = " << split.seed << "\n";
  const auto train_hist = class_histogram(split.train);
  const auto val_hist = class_histogram(split.validation);
  for (const auto& [diag, count] : train_hist) {
    meta << "train." << to_string(diag) << " = " << count << "\n";
  }
  for (const auto& [diag, count] : val_hist) {
    meta << "val." << to_string(diag) << " = " << count << "\n";
  }
  write_text_file(out_dir / "split.meta", meta.str());
}

}  // namespace lesionkit
