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
#ifndef LESIONKIT_NN_CHECKPOINT_HPP_
#define LESIONKIT_NN_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "lesionkit/nn/backbones.hpp"

namespace lesionkit::nn {

// Self-describing binary checkpoint container, version 1:
//   "LKCP" | u32 version | u32 scalar_bytes | u32 architecture |
//   i32 input_size | i32 num_classes | i32 random_crop_from (-1 = none) |
//   i32 epoch | u64 rng_base | u64 rng_step | u32 tensor_count |
//   { u32 name_len | name | u32 rows | u32 cols | raw column-major data }*
// Integers and floats are little-endian host layout. Unknown versions and
// scalar widths are refused on read.

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointHeader {
  Architecture architecture = Architecture::TinySurrogate;
  int input_size = 0;
  int num_classes = 0;
  int random_crop_from = -1;  // -1 when unset
  int epoch = 0;
  std::uint64_t rng_base = 0;
  std::uint64_t rng_step = 0;
};

template <typename T>
struct NamedTensor {
  std::string name;
  Mat<T> value;
};

template <typename T>
struct CheckpointData {
  CheckpointHeader header;
  std::vector<NamedTensor<T>> tensors;
};

namespace detail {

template <typename V>
void write_pod(std::ostream& out, const V& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(V));
}

template <typename V>
V read_pod(std::istream& in, const std::filesystem::path& path) {
  V v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(V));
  if (!in) throw IoError("truncated checkpoint: " + path.string());
  return v;
}

}  // namespace detail

template <typename T>
void write_checkpoint_file(const CheckpointData<T>& data, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path.string());

  out.write("LKCP", 4);
  detail::write_pod(out, kCheckpointVersion);
  detail::write_pod(out, static_cast<std::uint32_t>(sizeof(T)));
  detail::write_pod(out, static_cast<std::uint32_t>(data.header.architecture));
  detail::write_pod(out, static_cast<std::int32_t>(data.header.input_size));
  detail::write_pod(out, static_cast<std::int32_t>(data.header.num_classes));
  detail::write_pod(out, static_cast<std::int32_t>(data.header.random_crop_from));
  detail::write_pod(out, static_cast<std::int32_t>(data.header.epoch));
  detail::write_pod(out, data.header.rng_base);
  detail::write_pod(out, data.header.rng_step);
  detail::write_pod(out, static_cast<std::uint32_t>(data.tensors.size()));
  for (const auto& t : data.tensors) {
    detail::write_pod(out, static_cast<std::uint32_t>(t.name.size()));
    out.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    detail::write_pod(out, static_cast<std::uint32_t>(t.value.rows()));
    detail::write_pod(out, static_cast<std::uint32_t>(t.value.cols()));
    out.write(reinterpret_cast<const char*>(t.value.data()),
              static_cast<std::streamsize>(sizeof(T) * static_cast<std::size_t>(t.value.size())));
  }
  if (!out) throw IoError("checkpoint write failed: " + path.string());
}

template <typename T>
CheckpointData<T> read_checkpoint_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path.string());

  char magic[4] = {0};
  in.read(magic, 4);
  if (!in || std::string_view(magic, 4) != "LKCP") {
    throw IoError("not a checkpoint file: " + path.string());
  }
  const auto version = detail::read_pod<std::uint32_t>(in, path);
  if (version != kCheckpointVersion) {
    throw IoError("unsupported checkpoint version " + std::to_string(version) + ": " +
                  path.string());
  }
  const auto scalar_bytes = detail::read_pod<std::uint32_t>(in, path);
  if (scalar_bytes != sizeof(T)) {
    throw IoError("checkpoint scalar width " + std::to_string(scalar_bytes) +
                  " does not match this build: " + path.string());
  }

  CheckpointData<T> data;
  const auto arch = detail::read_pod<std::uint32_t>(in, path);
  if (arch > static_cast<std::uint32_t>(Architecture::TinySurrogate)) {
    throw IoError("checkpoint names an unknown architecture: " + path.string());
  }
  data.header.architecture = static_cast<Architecture>(arch);
  data.header.input_size = detail::read_pod<std::int32_t>(in, path);
  data.header.num_classes = detail::read_pod<std::int32_t>(in, path);
  data.header.random_crop_from = detail::read_pod<std::int32_t>(in, path);
  data.header.epoch = detail::read_pod<std::int32_t>(in, path);
  data.header.rng_base = detail::read_pod<std::uint64_t>(in, path);
  data.header.rng_step = detail::read_pod<std::uint64_t>(in, path);

  const auto count = detail::read_pod<std::uint32_t>(in, path);
  data.tensors.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedTensor<T> t;
    const auto name_len = detail::read_pod<std::uint32_t>(in, path);
    t.name.resize(name_len);
    in.read(t.name.data(), name_len);
    const auto rows = detail::read_pod<std::uint32_t>(in, path);
    const auto cols = detail::read_pod<std::uint32_t>(in, path);
    t.value.resize(rows, cols);
    in.read(reinterpret_cast<char*>(t.value.data()),
            static_cast<std::streamsize>(sizeof(T) * static_cast<std::size_t>(t.value.size())));
    if (!in) throw IoError("truncated checkpoint: " + path.string());
    data.tensors.push_back(std::move(t));
  }
  return data;
}

}  // namespace lesionkit::nn

#endif  // LESIONKIT_NN_CHECKPOINT_HPP_
