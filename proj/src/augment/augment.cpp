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
#include "lesionkit/augment/augment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lesionkit/core/csv.hpp"
#include "lesionkit/core/error.hpp"
#include "lesionkit/io/image_io.hpp"

namespace lesionkit {

void AugmentationConfig::validate() const {
  if (!(zoom_min > 0.0) || !(zoom_max >= zoom_min)) {
    throw ValidationError("augmentation zoom interval must be positive");
  }
  auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob_ok(hflip_prob) || !prob_ok(vflip_prob)) {
    throw ValidationError("flip probabilities must be in [0,1]");
  }
  if (expansion_cap < 1) throw ValidationError("expansion_cap must be >= 1");
  if (shear_range_deg < 0.0 || shift_fraction < 0.0) {
    throw ValidationError("shear/shift ranges must be non-negative");
  }
  if (global_target_factor < 1.0) {
    throw ValidationError("global_target_factor must be >= 1");
  }
}

AffineParams sample_affine_params(const AugmentationConfig& cfg, std::string_view image_id,
                                  int copy_index, int width, int height) {
  if (copy_index < 1) throw ValidationError("copy_index 0 is the original; expected >= 1");
  cfg.validate();
  RngStream rng(mix_seed(cfg.seed, image_id, static_cast<std::uint64_t>(copy_index)));
  AffineParams p;
  p.shear_deg = rng.uniform(-cfg.shear_range_deg, cfg.shear_range_deg);
  p.zoom = rng.uniform(cfg.zoom_min, cfg.zoom_max);
  p.shift_x = rng.uniform(-cfg.shift_fraction * width, cfg.shift_fraction * width);
  p.shift_y = rng.uniform(-cfg.shift_fraction * height, cfg.shift_fraction * height);
  p.hflip = rng.bernoulli(cfg.hflip_prob);
  p.vflip = rng.bernoulli(cfg.vflip_prob);
  return p;
}

std::map<Diagnosis, int> plan_expansion(const std::map<Diagnosis, std::size_t>& class_counts,
                                        const AugmentationConfig& cfg) {
  cfg.validate();
  std::map<Diagnosis, int> plan;
  if (class_counts.empty()) return plan;

  std::size_t n_max = 0;
  std::size_t n_total = 0;
  for (const auto& [diag, n] : class_counts) {
    if (n < 1) throw ValidationError("plan_expansion: class with zero count");
    n_max = std::max(n_max, n);
    n_total += n;
  }

  std::map<Diagnosis, int> base;
  for (const auto& [diag, n] : class_counts) {
    const auto m = static_cast<int>(
        std::lround(static_cast<double>(n_max) / static_cast<double>(n)));
    base[diag] = std::clamp(m, 1, cfg.expansion_cap);
  }

  const double target = cfg.global_target_factor * static_cast<double>(n_total);
  auto planned_total = [&](int scale) {
    std::size_t total = 0;
    for (const auto& [diag, n] : class_counts) {
      total += n * static_cast<std::size_t>(std::min(base[diag] * scale, cfg.expansion_cap));
    }
    return total;
  };
  auto all_capped = [&](int scale) {
    return std::all_of(base.begin(), base.end(), [&](const auto& kv) {
      return kv.second * scale >= cfg.expansion_cap;
    });
  };

  int scale = 1;
  while (static_cast<double>(planned_total(scale)) < target && !all_capped(scale)) ++scale;

  for (const auto& [diag, m] : base) {
    plan[diag] = std::min(m * scale, cfg.expansion_cap);
  }
  return plan;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::filesystem::path& file, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    std::ostringstream msg;
    msg << file.string() << ":" << line << ": bad number \"" << s << "\"";
    throw ParseError(msg.str());
  }
  return v;
}

}  // namespace

AugmentedManifest expand_dataset(const DatasetManifest& train, const AugmentationConfig& cfg,
                                 const std::filesystem::path& out_dir, bool overwrite) {
  cfg.validate();
  if (std::filesystem::exists(out_dir) && !std::filesystem::is_empty(out_dir) && !overwrite) {
    throw IoError("augmentation output directory is not empty (pass overwrite to replace): " +
                  out_dir.string());
  }
  std::filesystem::create_directories(out_dir);

  std::map<Diagnosis, std::size_t> counts;
  for (const auto& [diag, n] : class_histogram(train)) {
    if (n > 0) counts[diag] = n;
  }
  const auto plan = plan_expansion(counts, cfg);

  AugmentedManifest manifest;
  for (const LesionRecord& rec : train.records) {
    RasterImage img;
    try {
      img = load_image(rec.image_path);
    } catch (const Error& e) {
      throw IoError("expand_dataset: cannot read source image " + rec.image_path.string() +
                    " (" + e.what() + ")");
    }
    const int copies = plan.at(rec.diagnosis);
    for (int k = 0; k < copies; ++k) {
      AugmentedEntry entry;
      entry.image_id = rec.image_id;
      entry.copy_index = k;
      entry.path = out_dir / (rec.image_id + "_aug" + std::to_string(k) + ".png");
      if (k == 0) {
        save_png(img, entry.path);
      } else {
        entry.params = sample_affine_params(cfg, rec.image_id, k, img.width, img.height);
        save_png(apply_affine(img, entry.params), entry.path);
      }
      manifest.entries.push_back(std::move(entry));
    }
  }
  write_augmented_csv(manifest, out_dir / "augmented.csv");
  return manifest;
}

void write_augmented_csv(const AugmentedManifest& manifest, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "image_id,copy_index,shear_deg,zoom,shift_x,shift_y,hflip,vflip,path\n";
  for (const AugmentedEntry& e : manifest.entries) {
    out << e.image_id << ',' << e.copy_index << ',' << format_double(e.params.shear_deg) << ','
        << format_double(e.params.zoom) << ',' << format_double(e.params.shift_x) << ','
        << format_double(e.params.shift_y) << ',' << (e.params.hflip ? 1 : 0) << ','
        << (e.params.vflip ? 1 : 0) << ',' << e.path.string() << '\n';
  }
  write_text_file(path, out.str());
}

AugmentedManifest read_augmented_csv(const std::filesystem::path& path) {
  const std::vector<std::string> header(std::begin(kAugmentedHeader), std::end(kAugmentedHeader));
  const CsvTable table = read_csv(path, header);
  AugmentedManifest manifest;
  for (const CsvRow& row : table.rows) {
    AugmentedEntry e;
    e.image_id = row.cells[0];
    e.copy_index = static_cast<int>(parse_double(row.cells[1], path, row.line_number));
    e.params.shear_deg = parse_double(row.cells[2], path, row.line_number);
    e.params.zoom = parse_double(row.cells[3], path, row.line_number);
    e.params.shift_x = parse_double(row.cells[4], path, row.line_number);
    e.params.shift_y = parse_double(row.cells[5], path, row.line_number);
    e.params.hflip = row.cells[6] == "1";
    e.params.vflip = row.cells[7] == "1";
    e.path = row.cells[8];
    manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

}  // namespace lesionkit
