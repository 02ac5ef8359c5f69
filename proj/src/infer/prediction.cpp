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
#include "lesionkit/infer/prediction.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "lesionkit/core/csv.hpp"
#include "lesionkit/core/error.hpp"

namespace lesionkit {

int threshold_decision(const VecD& probabilities, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ValidationError("decision threshold must be in (0,1)");
  }
  return probabilities[kPositiveClass] >= threshold ? 1 : 0;
}

std::map<std::string, double> positive_scores(const PredictionSet& pred) {
  std::map<std::string, double> scores;
  for (const auto& [id, probs] : pred.entries) scores[id] = probs[kPositiveClass];
  return scores;
}

void write_prediction_csv(const PredictionSet& pred, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "image_id,score\n";
  char buf[32];
  for (const auto& [id, probs] : pred.entries) {
    std::snprintf(buf, sizeof(buf), "%.6f", probs[kPositiveClass]);
    out << id << ',' << buf << '\n';
  }
  write_text_file(path, out.str());
}

PredictionSet read_prediction_csv(const std::filesystem::path& path, Task task,
                                  std::string source) {
  const CsvTable table = read_csv(path, {"image_id", "score"});
  PredictionSet pred;
  pred.task = task;
  pred.source = source.empty() ? path.stem().string() : std::move(source);
  for (const CsvRow& row : table.rows) {
    double score = 0.0;
    const std::string& cell = row.cells[1];
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), score);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || score < 0.0 ||
        score > 1.0) {
      std::ostringstream msg;
      msg << path.string() << ":" << row.line_number << ": bad score \"" << cell << "\"";
      throw ParseError(msg.str());
    }
    if (pred.entries.count(row.cells[0])) {
      std::ostringstream msg;
      msg << path.string() << ":" << row.line_number << ": duplicate image_id \""
          << row.cells[0] << "\"";
      throw ValidationError(msg.str());
    }
    VecD probs(2);
    probs << 1.0 - score, score;
    pred.entries[row.cells[0]] = probs;
  }
  return pred;
}

}  // namespace lesionkit
