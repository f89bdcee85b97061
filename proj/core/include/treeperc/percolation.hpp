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

#ifndef TREEPERC_PERCOLATION_HPP_
#define TREEPERC_PERCOLATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "treeperc/random.hpp"
#include "treeperc/tree.hpp"

namespace treeperc {

/// Normalising function in the regime p = 1 - c / scale(n).
struct Scale {
  enum class Kind { kLog, kSqrt, kPower };
  Kind kind = Kind::kLog;
  double alpha = 0.5;  // exponent for kPower

  static Scale log() { return {Kind::kLog, 0.0}; }
  static Scale sqrt() { return {Kind::kSqrt, 0.5}; }
  static Scale power(double alpha) { return {Kind::kPower, alpha}; }

  double operator()(std::size_t n) const;
};

/// 1 - c / scale(n). Throws std::invalid_argument when c < 0 or when c > 0
/// and c >= scale(n) (the result would leave (0, 1]).
double regime_p(std::size_t n, double c, Scale scale);

/// Per-edge retention flags. Edge (v, parent(v)) is addressed by its child v
/// in {1, ..., n}.
class EdgeMask {
 public:
  EdgeMask() = default;
  explicit EdgeMask(std::size_t edges, bool kept = false)
      : kept_(edges, kept ? 1 : 0) {}

  std::size_t size() const noexcept { return kept_.size(); }
  bool kept(Vertex child) const { return kept_[child - 1] != 0; }
  void set(Vertex child, bool kept) { kept_[child - 1] = kept ? 1 : 0; }
  std::size_t kept_count() const;

 private:
  std::vector<std::uint8_t> kept_;
};

/// Independent Bernoulli(p) retention of every edge.
EdgeMask percolate(const Tree& tree, double p, Rng& rng);

/// Keeps edge v iff uniforms[v - 1] < p. Masks built from one shared set of
/// uniforms are monotone in p.
EdgeMask threshold_mask(std::span<const double> uniforms, double p);

/// Cluster label per vertex; the root cluster is label 0.
struct ClusterLabels {
  std::vector<std::uint32_t> label;
  std::vector<std::uint32_t> size;  // indexed by label
};

/// Single top-down pass: a kept edge inherits its parent's label, a removed
/// edge opens a new one. Linear in n for any valid tree.
ClusterLabels label_clusters(const Tree& tree, const EdgeMask& mask);

/// Same partition computed with a disjoint-set forest over the kept edges.
/// Labels are renumbered so the root's cluster is 0 and the others appear in
/// order of their smallest vertex.
ClusterLabels label_clusters_union_find(const Tree& tree, const EdgeMask& mask);

struct PercolationOutcome {
  std::size_t root_cluster_size = 0;       // C0
  std::vector<std::uint32_t> ranked_sizes; // C1 >= C2 >= ...
  std::size_t cluster_count = 0;
};

/// Root cluster size and the sorted non-root cluster sizes. Increasing trees
/// go through label_clusters; all others use the union-find labelling.
PercolationOutcome cluster_sizes(const Tree& tree, const EdgeMask& mask);

}  // namespace treeperc

#endif  // TREEPERC_PERCOLATION_HPP_
