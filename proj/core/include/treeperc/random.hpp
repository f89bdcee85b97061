// Copyright 2026 The treeperc Authors
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

#ifndef TREEPERC_RANDOM_HPP_
#define TREEPERC_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace treeperc {

// mt19937_64's output sequence is fixed by the standard, so streams are
// reproducible across toolchains. The std:: distributions are not, which is
// why the helpers below exist.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Independent, reproducible stream for one Monte Carlo trial.
///
/// The seed is a two-round SplitMix64 hash of (master_seed, trial_index), so
/// neighbouring indices land on unrelated engine states. Streams depend only
/// on the pair, never on scheduling.
Rng derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index);

__extension__ using uint128 = unsigned __int128;

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Lemire's multiply-shift with rejection of the biased low region.
  std::uint64_t x = rng();
  uint128 m = static_cast<uint128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<uint128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double on (0, 1].
inline double uniform_open01(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace treeperc

#endif  // TREEPERC_RANDOM_HPP_
