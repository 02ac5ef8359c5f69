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
#include "lesionkit/infer/ensemble.hpp"

#include <algorithm>
#include <vector>

#include "lesionkit/core/error.hpp"

namespace lesionkit {

PredictionSet ensemble_mean(std::span<const PredictionSet> sets) {
  if (sets.empty()) throw ValidationError("ensemble_mean: no prediction sets");
  const PredictionSet& first = sets.front();

  for (const PredictionSet& s : sets.subspan(1)) {
    if (s.task != first.task) throw ValidationError("ensemble_mean: task mismatch");
    if (s.entries.size() != first.entries.size()) {
      throw ValidationError("ensemble_mean: image_id sets differ");
    }
  }

  PredictionSet fused;
  fused.task = first.task;
  fused.source = "ensemble";

  const auto k = sets.size();
  std::vector<double> addends(k);
  for (const auto& [id, probs] : first.entries) {
    const auto classes = probs.size();
    VecD mean(classes);
    for (Eigen::Index c = 0; c < classes; ++c) {
      for (std::size_t s = 0; s < k; ++s) {
        const auto it = sets[s].entries.find(id);
        if (it == sets[s].entries.end()) {
          throw ValidationError("ensemble_mean: image_id \"" + id + "\" missing from set " +
                                sets[s].source);
        }
        if (it->second.size() != classes) {
          throw ValidationError("ensemble_mean: class count mismatch for \"" + id + "\"");
        }
        addends[s] = it->second[c];
      }
      // Sorted extended-precision sum: permutation-invariant to the bit.
      std::sort(addends.begin(), addends.end());
      long double acc = 0.0L;
      for (double v : addends) acc += v;
      const double lo = addends.front();
      const double hi = addends.back();
      mean[c] = std::clamp(static_cast<double>(acc / static_cast<long double>(k)), lo, hi);
    }
    fused.entries[id] = std::move(mean);
  }
  return fused;
}

}  // namespace lesionkit
