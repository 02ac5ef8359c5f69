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
#include "lesionkit/data/manifest.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "lesionkit/core/csv.hpp"
#include "lesionkit/core/error.hpp"

namespace lesionkit {

std::string_view to_string(Diagnosis d) {
  switch (d) {
    case Diagnosis::Melanoma: return "melanoma";
    case Diagnosis::SeborrheicKeratosis: return "seborrheic_keratosis";
    case Diagnosis::Nevus: return "nevus";
  }
  return "?";
}

std::string_view to_string(Task t) {
  return t == Task::Melanoma ? "melanoma" : "seborrheic_keratosis";
}

Task parse_task(std::string_view s) {
  if (s == "melanoma" || s == "mel") return Task::Melanoma;
  if (s == "seborrheic_keratosis" || s == "sk") return Task::SeborrheicKeratosis;
  throw ValidationError("unknown task: " + std::string(s));
}

int task_label(const LesionRecord& rec, Task task) {
  return task == Task::Melanoma ? rec.melanoma_label : rec.sk_label;
}

namespace {

// Ground-truth cells must be 0/1, optionally written as 0.0/1.0.
int parse_binary_cell(const std::string& cell, const std::filesystem::path& file,
                      std::size_t line) {
  if (cell == "0" || cell == "0.0") return 0;
  if (cell == "1" || cell == "1.0") return 1;
  std::ostringstream msg;
  msg << file.string() << ":" << line << ": label cell \"" << cell
      << "\" is not one of 0, 1, 0.0, 1.0";
  throw ParseError(msg.str());
}

}  // namespace

DatasetManifest load_manifest(const std::filesystem::path& csv_path,
                              const std::filesystem::path& image_root,
                              const ManifestLoadOptions& opts,
                              std::vector<std::filesystem::path>* missing) {
  const std::vector<std::string> header(std::begin(kGroundTruthHeader),
                                        std::end(kGroundTruthHeader));
  const CsvTable table = read_csv(csv_path, header);

  DatasetManifest manifest;
  manifest.source_tag = opts.source_tag.empty() ? csv_path.string() : opts.source_tag;
  manifest.records.reserve(table.rows.size());

  std::unordered_set<std::string> seen;
  for (const CsvRow& row : table.rows) {
    LesionRecord rec;
    rec.image_id = row.cells[0];
    if (rec.image_id.empty()) {
      std::ostringstream msg;
      msg << csv_path.string() << ":" << row.line_number << ": empty image_id";
      throw ParseError(msg.str());
    }
    if (!seen.insert(rec.image_id).second) {
      std::ostringstream msg;
      msg << csv_path.string() << ":" << row.line_number << ": duplicate image_id \""
          << rec.image_id << "\"";
      throw ValidationError(msg.str());
    }
    rec.melanoma_label = parse_binary_cell(row.cells[1], csv_path, row.line_number);
    rec.sk_label = parse_binary_cell(row.cells[2], csv_path, row.line_number);
    if (rec.melanoma_label == 1 && rec.sk_label == 1) {
      std::ostringstream msg;
      msg << csv_path.string() << ":" << row.line_number << ": image \"" << rec.image_id
          << "\" labeled both melanoma and seborrheic keratosis; diagnoses are mutually"
             " exclusive";
      throw ValidationError(msg.str());
    }
    rec.diagnosis = rec.melanoma_label ? Diagnosis::Melanoma
                    : rec.sk_label     ? Diagnosis::SeborrheicKeratosis
                                       : Diagnosis::Nevus;
    rec.image_path = image_root / (rec.image_id + opts.image_extension);

    if (opts.check_files && !std::filesystem::exists(rec.image_path)) {
      if (missing) {
        missing->push_back(rec.image_path);
      } else {
        std::cerr << "warning: missing image file " << rec.image_path.string() << "\n";
      }
    }
    manifest.records.push_back(std::move(rec));
  }
  return manifest;
}

void write_manifest_csv(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "image_id,melanoma,seborrheic_keratosis\n";
  for (const LesionRecord& rec : manifest.records) {
    out << rec.image_id << ',' << (rec.melanoma_label ? "1.0" : "0.0") << ','
        << (rec.sk_label ? "1.0" : "0.0") << '\n';
  }
  write_text_file(path, out.str());
}

std::map<Diagnosis, std::size_t> class_histogram(const DatasetManifest& manifest) {
  std::map<Diagnosis, std::size_t> hist{{Diagnosis::Melanoma, 0},
                                        {Diagnosis::SeborrheicKeratosis, 0},
                                        {Diagnosis::Nevus, 0}};
  for (const LesionRecord& rec : manifest.records) ++hist[rec.diagnosis];
  return hist;
}

std::size_t BinaryTaskManifest::positives() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

BinaryTaskManifest derive_task_manifest(const DatasetManifest& manifest, Task task) {
  BinaryTaskManifest out;
  out.task = task;
  out.records = manifest.records;
  out.labels.reserve(manifest.size());
  for (const LesionRecord& rec : manifest.records) out.labels.push_back(task_label(rec, task));
  return out;
}

std::map<std::string, int> task_labels(const DatasetManifest& manifest, Task task) {
  std::map<std::string, int> labels;
  for (const LesionRecord& rec : manifest.records) labels[rec.image_id] = task_label(rec, task);
  return labels;
}

}  // namespace lesionkit
