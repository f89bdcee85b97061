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

#ifndef TREEPERC_GENERATORS_HPP_
#define TREEPERC_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treeperc/random.hpp"
#include "treeperc/tree.hpp"

namespace treeperc {

enum class Family { kRecursive, kScaleFree, kCayley, kDary, kStar };

std::string_view family_name(Family family);
/// Accepts "recursive", "scalefree" (or "scale_free"), "cayley", "dary", "star".
std::optional<Family> parse_family(std::string_view name);

/// A tree family together with its size and shape parameters. For d-ary
/// trees the edge count is derived from (d, h) and `n` is ignored.
struct FamilySpec {
  Family family = Family::kRecursive;
  std::size_t n = 1;
  double beta = 0.0;   // scale-free, > -1
  unsigned d = 2;      // d-ary, >= 2
  unsigned h = 1;      // d-ary, >= 1
  double alpha = 0.5;  // star, in (0, 1)

  /// Edge count of the trees this spec produces.
  std::size_t edge_count() const;
  /// Throws std::invalid_argument when a parameter is out of its domain.
  void check() const;
  /// d-ary and star trees do not consume randomness.
  bool deterministic() const {
    return family == Family::kDary || family == Family::kStar;
  }
};

/// Draws one tree of the given family. Deterministic families ignore rng.
Tree generate(const FamilySpec& spec, Rng& rng);

/// Uniform random recursive tree: parent(i) uniform on {0, ..., i-1}.
Tree gen_recursive(std::size_t n, Rng& rng);

/// Preferential-attachment tree grown from the single edge {0, 1}. Vertex
/// m+1 attaches to i with probability (deg(i) + beta) / (2m + beta (m+1)).
Tree gen_scale_free(std::size_t n, double beta, Rng& rng);

/// Uniform labelled tree on {0, ..., n} (Pruefer decoding), rooted at 0.
Tree gen_cayley(std::size_t n, Rng& rng);

/// Complete d-ary tree of height h, labelled breadth-first.
Tree gen_dary(unsigned d, unsigned h);

/// b = max(1, floor(n^(1-alpha))) paths hanging from the root; the n
/// non-root vertices are split among them with sizes differing by at most 1.
Tree gen_star(std::size_t n, double alpha);

/// d (d^h - 1) / (d - 1); throws std::overflow_error when the vertex count
/// does not fit in a Vertex.
std::size_t dary_edge_count(unsigned d, unsigned h);

/// Number of branches gen_star uses for (n, alpha).
std::size_t star_branch_count(std::size_t n, double alpha);

/// Decodes a Pruefer sequence of length n-1 over {0, ..., n} into the
/// labelled tree it encodes, rooted at 0.
Tree tree_from_pruefer(const std::vector<Vertex>& sequence);

/// Attachment probabilities of the next vertex given current degrees.
std::vector<double> scale_free_attachment_law(
    const std::vector<std::uint32_t>& degree, double beta);

/// Step-by-step preferential-attachment growth with the degree table exposed.
///
/// For beta >= 0 a step is a two-way mixture: with probability
/// 2m / (2m + beta (m+1)) an endpoint of a uniformly chosen edge (that is,
/// a degree-biased vertex), otherwise a uniform vertex. For beta in (-1, 0)
/// a degree-biased proposal i is accepted with probability
/// (deg(i) + beta) / deg(i), which is positive because every degree is >= 1.
class ScaleFreeGrower {
 public:
  explicit ScaleFreeGrower(double beta, std::size_t reserve = 0);

  /// Adds one vertex; returns the vertex it attached to.
  Vertex step(Rng& rng);

  std::size_t edge_count() const noexcept { return parent_.size() - 1; }
  const std::vector<std::uint32_t>& degrees() const noexcept { return degree_; }
  const std::vector<Vertex>& parents() const noexcept { return parent_; }
  Tree release() &&;

 private:
  Vertex sample_target(Rng& rng) const;

  double beta_;
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> degree_;
  std::vector<Vertex> endpoints_;  // both ends of every edge
};

}  // namespace treeperc

#endif  // TREEPERC_GENERATORS_HPP_
