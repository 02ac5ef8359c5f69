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
#ifndef LESIONKIT_CORE_CSV_HPP_
#define LESIONKIT_CORE_CSV_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace lesionkit {

// All file formats in this project are plain comma-separated UTF-8 without
// quoting or embedded commas, so a strict minimal reader is enough.

struct CsvRow {
  std::size_t line_number = 0;  // 1-based, header is line 1
  std::vector<std::string> cells;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

std::vector<std::string> split_csv_line(const std::string& line);

/// Reads a CSV file and checks the header matches `expected_header` exactly.
/// Every data row must have the same cell count as the header.
CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& expected_header);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lesionkit

#endif  // LESIONKIT_CORE_CSV_HPP_
