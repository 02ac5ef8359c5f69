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
#include "lesionkit/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lesionkit/core/csv.hpp"
#include "lesionkit/core/error.hpp"

namespace lesionkit {

namespace {

void check_same_keys(const ScoreMap& scores, const LabelMap& labels) {
  if (scores.size() != labels.size()) {
    throw ValidationError("scores and labels disagree on image count (" +
                          std::to_string(scores.size()) + " vs " +
                          std::to_string(labels.size()) + ")");
  }
  auto si = scores.begin();
  auto li = labels.begin();
  for (; si != scores.end(); ++si, ++li) {
    if (si->first != li->first) {
      throw ValidationError("scores and labels disagree on image_id \"" + si->first + "\" vs \"" +
                            li->first + "\"");
    }
  }
}

void flatten(const ScoreMap& score_map, const LabelMap& label_map, std::vector<double>& scores,
             std::vector<int>& labels) {
  check_same_keys(score_map, label_map);
  scores.reserve(score_map.size());
  labels.reserve(label_map.size());
  for (const auto& [id, s] : score_map) {
    scores.push_back(s);
    labels.push_back(label_map.at(id));
  }
}

void check_binary_inputs(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw ValidationError("scores/labels length mismatch");
  }
  for (int l : labels) {
    if (l != 0 && l != 1) throw ValidationError("labels must be 0/1");
  }
}

}  // namespace

ConfusionMatrix confusion_at_threshold(const ScoreMap& scores, const LabelMap& labels,
                                       double threshold) {
  check_same_keys(scores, labels);
  ConfusionMatrix cm;
  for (const auto& [id, score] : scores) {
    const int truth = labels.at(id);
    const bool positive = score >= threshold;
    if (truth == 1) {
      positive ? ++cm.tp : ++cm.fn;
    } else {
      positive ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

std::optional<double> sensitivity(const ConfusionMatrix& cm) {
  const auto den = cm.tp + cm.fn;
  if (den == 0) return std::nullopt;
  return static_cast<double>(cm.tp) / static_cast<double>(den);
}

std::optional<double> specificity(const ConfusionMatrix& cm) {
  const auto den = cm.tn + cm.fp;
  if (den == 0) return std::nullopt;
  return static_cast<double>(cm.tn) / static_cast<double>(den);
}

std::optional<double> accuracy(const ConfusionMatrix& cm) {
  const auto den = cm.total();
  if (den == 0) return std::nullopt;
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(den);
}

RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels) {
  check_binary_inputs(scores, labels);
  const auto p = static_cast<std::uint64_t>(std::count(labels.begin(), labels.end(), 1));
  const auto n = static_cast<std::uint64_t>(labels.size()) - p;
  if (p == 0 || n == 0) {
    throw ValidationError("roc_curve needs at least one positive and one negative label");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.fpr.push_back(0.0);
  curve.tpr.push_back(0.0);
  curve.thresholds.push_back(std::numeric_limits<double>::infinity());

  std::uint64_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double value = scores[order[i]];
    // Whole tie group enters at one threshold step.
    while (i < order.size() && scores[order[i]] == value) {
      labels[order[i]] == 1 ? ++tp : ++fp;
      ++i;
    }
    curve.fpr.push_back(static_cast<double>(fp) / static_cast<double>(n));
    curve.tpr.push_back(static_cast<double>(tp) / static_cast<double>(p));
    curve.thresholds.push_back(value);
  }
  return curve;
}

RocCurve roc_curve(const ScoreMap& scores, const LabelMap& labels) {
  std::vector<double> s;
  std::vector<int> l;
  flatten(scores, labels, s, l);
  return roc_curve(s, l);
}

double auc_trapezoid(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    area += (curve.fpr[i] - curve.fpr[i - 1]) * (curve.tpr[i] + curve.tpr[i - 1]) * 0.5;
  }
  return area;
}

double auc_pair_oracle(std::span<const double> scores, std::span<const int> labels) {
  check_binary_inputs(scores, labels);
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == 1 ? pos : neg).push_back(scores[i]);
  }
  if (pos.empty() || neg.empty()) {
    throw ValidationError("auc_pair_oracle needs at least one positive and one negative label");
  }
  std::uint64_t greater = 0, ties = 0;
  for (double sp : pos) {
    for (double sn : neg) {
      if (sp > sn) {
        ++greater;
      } else if (sp == sn) {
        ++ties;
      }
    }
  }
  const double pairs = static_cast<double>(pos.size()) * static_cast<double>(neg.size());
  return (static_cast<double>(greater) + 0.5 * static_cast<double>(ties)) / pairs;
}

double auc_pair_oracle(const ScoreMap& scores, const LabelMap& labels) {
  std::vector<double> s;
  std::vector<int> l;
  flatten(scores, labels, s, l);
  return auc_pair_oracle(s, l);
}

EvalReport evaluate(const ScoreMap& scores, const LabelMap& labels, Task task,
                    double threshold) {
  check_same_keys(scores, labels);
  EvalReport report;
  report.task = task;
  report.threshold = threshold;
  report.confusion = confusion_at_threshold(scores, labels, threshold);
  report.accuracy = accuracy(report.confusion);
  report.sensitivity = sensitivity(report.confusion);
  report.specificity = specificity(report.confusion);
  // Per-class accuracy is recall per class at the decision threshold.
  report.per_class_accuracy["positive"] = report.sensitivity;
  report.per_class_accuracy["negative"] = report.specificity;

  const bool two_classes = report.confusion.tp + report.confusion.fn > 0 &&
                           report.confusion.tn + report.confusion.fp > 0;
  if (two_classes) {
    report.roc = roc_curve(scores, labels);
    const double trapezoid = auc_trapezoid(report.roc);
    const double pairs = auc_pair_oracle(scores, labels);
    if (std::abs(trapezoid - pairs) > 1e-9) {
      std::ostringstream msg;
      msg << "internal error: AUC routes disagree (trapezoid " << trapezoid << ", pair oracle "
          << pairs << ")";
      throw Error(msg.str());
    }
    report.auc = trapezoid;
  }
  return report;
}

EvalReport evaluate(const PredictionSet& pred, const LabelMap& labels, double threshold) {
  return evaluate(positive_scores(pred), labels, pred.task, threshold);
}

namespace {

std::string fmt_rate(const std::optional<double>& v) {
  if (!v) return "n/a";
  std::ostringstream ss;
  ss.precision(6);
  ss << std::fixed << *v;
  return ss.str();
}

}  // namespace

std::string report_text(const EvalReport& r) {
  std::ostringstream out;
  out << "task:                 " << to_string(r.task) << "\n";
  out << "decision threshold:   " << r.threshold << "\n";
  out << "images evaluated:     " << r.confusion.total() << "\n";
  out << "accuracy:             " << fmt_rate(r.accuracy) << "\n";
  out << "auc:                  " << fmt_rate(r.auc) << "\n";
  out << "sensitivity:          " << fmt_rate(r.sensitivity) << "\n";
  out << "specificity:          " << fmt_rate(r.specificity) << "\n";
  out << "positive-class acc:   " << fmt_rate(r.per_class_accuracy.at("positive")) << "\n";
  out << "negative-class acc:   " << fmt_rate(r.per_class_accuracy.at("negative")) << "\n";
  out << "confusion:            tp=" << r.confusion.tp << " fp=" << r.confusion.fp
      << " tn=" << r.confusion.tn << " fn=" << r.confusion.fn << "\n";
  return out.str();
}

void write_report_kv(const EvalReport& r, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "task = " << to_string(r.task) << "\n";
  out << "threshold = " << r.threshold << "\n";
  out << "accuracy = " << fmt_rate(r.accuracy) << "\n";
  out << "auc = " << fmt_rate(r.auc) << "\n";
  out << "sensitivity = " << fmt_rate(r.sensitivity) << "\n";
  out << "specificity = " << fmt_rate(r.specificity) << "\n";
  out << "per_class_accuracy.positive = " << fmt_rate(r.per_class_accuracy.at("positive"))
      << "\n";
  out << "per_class_accuracy.negative = " << fmt_rate(r.per_class_accuracy.at("negative"))
      << "\n";
  out << "confusion.tp = " << r.confusion.tp << "\n";
  out << "confusion.fp = " << r.confusion.fp << "\n";
  out << "confusion.tn = " << r.confusion.tn << "\n";
  out << "confusion.fn = " << r.confusion.fn << "\n";
  write_text_file(path, out.str());
}

void write_roc_csv(const RocCurve& curve, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "threshold,fpr,tpr\n";
  out.precision(17);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << curve.thresholds[i] << ',' << curve.fpr[i] << ',' << curve.tpr[i] << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace lesionkit
