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

#ifndef TREEPERC_TREE_HPP_
#define TREEPERC_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeperc {

using Vertex = std::uint32_t;

/// Parent entry of the root. Any other vertex carrying it is an orphan.
inline constexpr Vertex kNoParent = std::numeric_limits<Vertex>::max();

enum class TreeErrorKind {
  kEmpty,
  kRootHasParent,
  kOrphan,
  kOutOfRange,
  kCycle,
};

struct TreeError {
  TreeErrorKind kind;
  Vertex vertex;  // first offending vertex
  std::string message;
};

/// Checks a parent array over vertices {0, ..., n}: parent[0] must be
/// kNoParent, every other entry must lie in {0, ..., n}, and every vertex
/// must reach 0. Returns the first violation found, or nullopt.
std::optional<TreeError> validate(std::span<const Vertex> parent);

class InvalidTree : public std::invalid_argument {
 public:
  explicit InvalidTree(TreeError error)
      : std::invalid_argument(error.message), error_(std::move(error)) {}
  const TreeError& error() const noexcept { return error_; }

 private:
  TreeError error_;
};

/// Rooted tree on {0, ..., n} stored as a parent array; the root is 0.
///
/// Immutable once built. Construction validates the array and records a
/// top-down visiting order, which is the identity when every parent label
/// is smaller than its child's (the "increasing" case produced by the
/// recursive, scale-free, d-ary and star generators).
class Tree {
 public:
  /// Throws InvalidTree on a malformed array.
  static Tree from_parents(std::vector<Vertex> parent);

  std::size_t edge_count() const noexcept { return parent_.size() - 1; }
  std::size_t vertex_count() const noexcept { return parent_.size(); }

  Vertex parent(Vertex v) const { return parent_[v]; }
  std::span<const Vertex> parents() const noexcept { return parent_; }

  /// parent(v) < v for every non-root v.
  bool increasing() const noexcept { return order_.empty(); }

  /// Calls f(v) for every vertex with each parent visited before its
  /// children; the root comes first.
  template <class F>
  void for_each_top_down(F&& f) const {
    if (order_.empty()) {
      for (std::size_t v = 0; v < parent_.size(); ++v) f(static_cast<Vertex>(v));
    } else {
      for (Vertex v : order_) f(v);
    }
  }

 private:
  Tree(std::vector<Vertex> parent, std::vector<Vertex> order)
      : parent_(std::move(parent)), order_(std::move(order)) {}

  std::vector<Vertex> parent_;
  std::vector<Vertex> order_;  // empty when increasing
};

struct DepthTable {
  std::vector<std::uint32_t> depth;
};

/// Hop distance of every vertex to the root, in one linear pass.
DepthTable depths(const Tree& tree);

/// Reusable mark buffer for reduced-length queries. Each query costs time
/// proportional to the edges it touches rather than to the tree size.
class PathMarker {
 public:
  explicit PathMarker(std::size_t vertex_count) : marked_(vertex_count, 0) {}

  /// Marks the root-to-v path and returns how many edges were newly marked.
  std::size_t add(const Tree& tree, Vertex v);
  void clear();

 private:
  std::vector<std::uint8_t> marked_;
  std::vector<Vertex> touched_;
};

/// Number of edges in the union of the root-to-target paths. Repeated
/// targets contribute nothing extra. Throws std::out_of_range on a bad target.
std::size_t reduced_length(const Tree& tree, std::span<const Vertex> targets);
std::size_t reduced_length(const Tree& tree, std::span<const Vertex> targets,
                           PathMarker& marker);

/// Depth of the lowest common ancestor of v1 and v2.
std::uint32_t branchpoint_depth(const Tree& tree, Vertex v1, Vertex v2);

}  // namespace treeperc

#endif  // TREEPERC_TREE_HPP_
