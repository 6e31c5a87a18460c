// Copyright 2026 The HomOpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOMOPT_RNG_HPP_
#define HOMOPT_RNG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace homopt {

using Rng = std::mt19937_64;

// Uniform draw in [0, 1) from the top 53 bits of the engine output.
// Unlike std::uniform_real_distribution, the mapping is fixed, so seeded
// streams replay identically on every platform.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + uniform01(rng) * (hi - lo);
}

inline double uniform_normal(Rng& rng) {
  // Box-Muller; consumes exactly two engine draws per variate.
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const double u1 = 1.0 - uniform01(rng);  // (0, 1], keeps log finite
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// Uniform integer in [lo, hi], both ends inclusive.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const double span = static_cast<double>(hi - lo) + 1.0;
  const auto offset = static_cast<std::int64_t>(uniform01(rng) * span);
  return lo + std::min(offset, hi - lo);
}

// Stream-splitting helper: derives an independent seed from a base seed and
// a stream tag (SplitMix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace homopt

#endif  // HOMOPT_RNG_HPP_
