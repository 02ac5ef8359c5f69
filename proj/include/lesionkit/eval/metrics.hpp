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
#ifndef LESIONKIT_EVAL_METRICS_HPP_
#define LESIONKIT_EVAL_METRICS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lesionkit/infer/prediction.hpp"

namespace lesionkit {

struct ConfusionMatrix {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::uint64_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

using ScoreMap = std::map<std::string, double>;
using LabelMap = std::map<std::string, int>;

/// Counts with the ">= threshold is positive" rule. Key sets must match.
ConfusionMatrix confusion_at_threshold(const ScoreMap& scores, const LabelMap& labels,
                                       double threshold);

// Rates as exact integer ratios; nullopt (never 0) when the denominator is 0.
std::optional<double> sensitivity(const ConfusionMatrix& cm);  // tp / (tp+fn)
std::optional<double> specificity(const ConfusionMatrix& cm);  // tn / (tn+fp)
std::optional<double> accuracy(const ConfusionMatrix& cm);     // (tp+tn) / total

/// ROC staircase; point i is the (FPR, TPR) reached once every score
/// >= thresholds[i] is called positive. Starts at (0,0) under an infinite
/// sentinel threshold and ends at (1,1); tied scores collapse into a single
/// threshold step.
struct RocCurve {
  std::vector<double> fpr;
  std::vector<double> tpr;
  std::vector<double> thresholds;  // parallel to the points
  std::size_t size() const { return fpr.size(); }
};

/// Requires at least one positive and one negative label.
RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels);
RocCurve roc_curve(const ScoreMap& scores, const LabelMap& labels);

/// Trapezoidal area under the curve over FPR in [0,1].
double auc_trapezoid(const RocCurve& curve);

/// Independent AUC oracle: Mann-Whitney pair counting,
/// (#{score_p > score_n} + 0.5 #ties) / (P*N), by brute force over all pairs.
double auc_pair_oracle(std::span<const double> scores, std::span<const int> labels);
double auc_pair_oracle(const ScoreMap& scores, const LabelMap& labels);

/// Everything reported for one task. Rates are nullopt where undefined; auc
/// is nullopt for single-class label sets.
struct EvalReport {
  Task task = Task::Melanoma;
  double threshold = 0.5;
  std::optional<double> accuracy;
  std::optional<double> auc;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::map<std::string, std::optional<double>> per_class_accuracy;  // "positive"/"negative"
  ConfusionMatrix confusion;
  RocCurve roc;
};

/// Assembles the full report. AUC is computed by both routes (trapezoid over
/// the ROC and the pair oracle); disagreement beyond 1e-9 is an internal
/// error.
EvalReport evaluate(const PredictionSet& pred, const LabelMap& labels, double threshold = 0.5);
EvalReport evaluate(const ScoreMap& scores, const LabelMap& labels, Task task,
                    double threshold = 0.5);

std::string report_text(const EvalReport& report);
/// Flat key = value file, machine-readable counterpart of report_text.
void write_report_kv(const EvalReport& report, const std::filesystem::path& path);
/// threshold,fpr,tpr rows for external plotting.
void write_roc_csv(const RocCurve& curve, const std::filesystem::path& path);

}  // namespace lesionkit

#endif  // LESIONKIT_EVAL_METRICS_HPP_
