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
#ifndef LESIONKIT_INFER_PREDICTION_HPP_
#define LESIONKIT_INFER_PREDICTION_HPP_

#include <filesystem>
#include <map>
#include <string>

#include "lesionkit/core/types.hpp"
#include "lesionkit/data/manifest.hpp"

namespace lesionkit {

/// Index of the positive class in every probability vector (class 0 is the
/// negative / rest class). Binary vectors throughout are [p_neg, p_pos].
inline constexpr int kPositiveClass = 1;

/// Per-image class-probability vectors for one model or an ensemble.
struct PredictionSet {
  Task task = Task::Melanoma;
  std::map<std::string, VecD> entries;  // image_id -> normalized probabilities
  std::string source;                   // model id or "ensemble"

  std::size_t size() const { return entries.size(); }
};

/// ">= threshold is positive"; the boundary score counts as positive.
int threshold_decision(const VecD& probabilities, double threshold = 0.5);

/// image_id -> positive-class probability.
std::map<std::string, double> positive_scores(const PredictionSet& pred);

/// Submission-shaped CSV: header image_id,score with 6-decimal scores.
void write_prediction_csv(const PredictionSet& pred, const std::filesystem::path& path);

/// Rebuilds a binary PredictionSet ([1-score, score]) from a prediction CSV.
PredictionSet read_prediction_csv(const std::filesystem::path& path, Task task,
                                  std::string source = {});

}  // namespace lesionkit

#endif  // LESIONKIT_INFER_PREDICTION_HPP_
