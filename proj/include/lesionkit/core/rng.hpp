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
#ifndef LESIONKIT_CORE_RNG_HPP_
#define LESIONKIT_CORE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

namespace lesionkit {

// Every stochastic choice in the pipeline flows through RngStream so results
// are bit-identical across platforms and re-runs. std::mt19937_64 has a
// standard-specified output sequence; the distribution mappings below are
// hand-rolled because the std::*_distribution adapters are
// implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (0x9e3779b97f4a7c15ull + b));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(a, b), c);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::string_view tag) {
  return mix_seed(a, fnv1a64(tag));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::string_view tag, std::uint64_t c) {
  return mix_seed(mix_seed(a, fnv1a64(tag)), c);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  /// Uniform integer in [0, n). Requires n >= 1.
  std::int64_t uniform_int(std::int64_t n) {
    return static_cast<std::int64_t>(uniform01() * static_cast<double>(n));
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller (cosine branch only).
  double normal() {
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Fisher-Yates shuffle, deterministic for a given stream state.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(static_cast<std::int64_t>(i)));
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace lesionkit

#endif  // LESIONKIT_CORE_RNG_HPP_
