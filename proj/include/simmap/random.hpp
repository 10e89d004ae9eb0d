// Copyright 2026 The Simmap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIMMAP_RANDOM_HPP
#define SIMMAP_RANDOM_HPP

#include <cstdint>
#include <random>

namespace simmap {

// std::uniform_real_distribution is implementation-defined, so all uniform
// draws go through this helper to keep outputs reproducible across builds.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform draw in [lo, hi).
inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic per-start seed derived from a master seed and a start index.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t start_index) {
  return mix64(master_seed + 0x9E3779B97F4A7C15ULL * (start_index + 1));
}

}  // namespace simmap

#endif  // SIMMAP_RANDOM_HPP
