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
#include "lesionkit/core/csv.hpp"

#include <fstream>
#include <sstream>

#include "lesionkit/core/error.hpp"

namespace lesionkit {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& expected_header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV file: " + path.string());

  CsvTable table;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line_number == 1) {
      table.header = split_csv_line(line);
      if (table.header != expected_header) {
        std::ostringstream msg;
        msg << path.string() << ": unexpected header \"" << line << "\", expected \"";
        for (std::size_t i = 0; i < expected_header.size(); ++i) {
          if (i) msg << ',';
          msg << expected_header[i];
        }
        msg << '"';
        throw ParseError(msg.str());
      }
      continue;
    }
    if (line.empty() || line == "\r") continue;  // trailing blank lines are fine
    CsvRow row;
    row.line_number = line_number;
    row.cells = split_csv_line(line);
    if (row.cells.size() != expected_header.size()) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_number << ": expected " << expected_header.size()
          << " cells, got " << row.cells.size();
      throw ParseError(msg.str());
    }
    table.rows.push_back(std::move(row));
  }
  if (line_number == 0) throw ParseError(path.string() + ": empty file, missing header");
  return table;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lesionkit
