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
#ifndef LESIONKIT_DATA_MANIFEST_HPP_
#define LESIONKIT_DATA_MANIFEST_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lesionkit {

/// Three-way ground-truth diagnosis carried by the ISIC-style manifest.
enum class Diagnosis { Melanoma, SeborrheicKeratosis, Nevus };

/// The two independent binary recognition tasks.
enum class Task { Melanoma, SeborrheicKeratosis };

std::string_view to_string(Diagnosis d);
std::string_view to_string(Task t);
Task parse_task(std::string_view s);

/// One image with its diagnosis and the derived per-task binary labels.
/// Exactly one of the three diagnoses holds: melanoma_label=1 iff Melanoma,
/// sk_label=1 iff SeborrheicKeratosis, Nevus maps to (0,0).
struct LesionRecord {
  std::string image_id;
  std::filesystem::path image_path;
  Diagnosis diagnosis = Diagnosis::Nevus;
  int melanoma_label = 0;
  int sk_label = 0;
};

/// Binary label of a record under the given task: the task class is positive,
/// both other classes are negative.
int task_label(const LesionRecord& rec, Task task);

struct DatasetManifest {
  std::vector<LesionRecord> records;
  std::string source_tag;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

struct ManifestLoadOptions {
  std::string image_extension = ".jpg";
  bool check_files = true;  // report (never drop) records whose image is missing
  std::string source_tag;
};

inline constexpr const char* kGroundTruthHeader[] = {"image_id", "melanoma",
                                                     "seborrheic_keratosis"};

/// Loads an ISIC-style ground-truth CSV (header image_id,melanoma,
/// seborrheic_keratosis; cells 0/1 or 0.0/1.0). image_path is
/// image_root/image_id + extension. Missing image files are appended to
/// `missing` (or printed to stderr when missing == nullptr); the records stay.
DatasetManifest load_manifest(const std::filesystem::path& csv_path,
                              const std::filesystem::path& image_root,
                              const ManifestLoadOptions& opts = {},
                              std::vector<std::filesystem::path>* missing = nullptr);

/// Writes a manifest back out in the ground-truth CSV format (labels as 1.0/0.0).
void write_manifest_csv(const DatasetManifest& manifest, const std::filesystem::path& path);

std::map<Diagnosis, std::size_t> class_histogram(const DatasetManifest& manifest);

/// The manifest restricted to one binary task: same records, labels via
/// task_label. Counts are conserved.
struct BinaryTaskManifest {
  Task task = Task::Melanoma;
  std::vector<LesionRecord> records;
  std::vector<int> labels;  // parallel to records

  std::size_t size() const { return records.size(); }
  std::size_t positives() const;
  std::size_t negatives() const { return size() - positives(); }
};

BinaryTaskManifest derive_task_manifest(const DatasetManifest& manifest, Task task);

/// image_id -> binary label map for one task, as consumed by the evaluator.
std::map<std::string, int> task_labels(const DatasetManifest& manifest, Task task);

}  // namespace lesionkit

#endif  // LESIONKIT_DATA_MANIFEST_HPP_
