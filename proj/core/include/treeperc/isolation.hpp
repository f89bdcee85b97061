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

#ifndef TREEPERC_ISOLATION_HPP_
#define TREEPERC_ISOLATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "treeperc/random.hpp"
#include "treeperc/tree.hpp"

namespace treeperc {

/// Sizes of the subtrees set aside by successive cuts, in cut order. The
/// position in frozen_sizes is the step at which the subtree appeared.
struct IsolationTrace {
  std::vector<std::uint32_t> frozen_sizes;

  std::size_t steps() const noexcept { return frozen_sizes.size(); }
};

/// Random isolation of the root: repeatedly remove a uniformly chosen edge
/// of the component containing 0 and freeze the part that falls off, until
/// the root is alone. Every vertex is frozen exactly once, so the total
/// work is linear in n.
IsolationTrace isolate_root(const Tree& tree, Rng& rng);

/// 1 / (j (j + 1)). Throws std::invalid_argument for j == 0.
double eta_pmf(std::uint64_t j);

/// Draw from the law above by inversion, floor(1 / U) with U uniform on
/// (0, 1]; with a cap, redraws until the value is at most cap.
std::uint64_t sample_eta(Rng& rng, std::optional<std::uint64_t> cap = std::nullopt);

/// P(eta = j | eta <= cap) = (cap + 1) / (cap j (j + 1)) for 1 <= j <= cap.
double capped_eta_pmf(std::uint64_t j, std::uint64_t cap);

}  // namespace treeperc

#endif  // TREEPERC_ISOLATION_HPP_
