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

#include "treeperc/tree.hpp"

#include <string>
#include <utility>

namespace treeperc {
namespace {

void check_vertex(const Tree& tree, Vertex v) {
  if (v >= tree.vertex_count()) {
    throw std::out_of_range("vertex " + std::to_string(v) +
                            " out of range for tree with " +
                            std::to_string(tree.vertex_count()) + " vertices");
  }
}

std::uint32_t depth_of(const Tree& tree, Vertex v) {
  std::uint32_t d = 0;
  while (v != 0) {
    v = tree.parent(v);
    ++d;
  }
  return d;
}

// Breadth-first order from the root over a child list built from `parent`.
// Vertices missing from the result do not reach the root.
std::vector<Vertex> breadth_first_order(std::span<const Vertex> parent) {
  const std::size_t count = parent.size();
  std::vector<std::uint32_t> offset(count + 1, 0);
  for (std::size_t v = 1; v < count; ++v) ++offset[parent[v] + 1];
  for (std::size_t v = 0; v < count; ++v) offset[v + 1] += offset[v];
  std::vector<Vertex> children(count - 1);
  std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
  for (std::size_t v = 1; v < count; ++v) {
    children[cursor[parent[v]]++] = static_cast<Vertex>(v);
  }

  std::vector<Vertex> order;
  order.reserve(count);
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex u = order[head];
    for (std::uint32_t i = offset[u]; i < offset[u + 1]; ++i) {
      order.push_back(children[i]);
    }
  }
  return order;
}

bool is_increasing(std::span<const Vertex> parent) {
  for (std::size_t v = 1; v < parent.size(); ++v) {
    if (parent[v] >= v) return false;
  }
  return true;
}

}  // namespace

std::optional<TreeError> validate(std::span<const Vertex> parent) {
  if (parent.empty()) {
    return TreeError{TreeErrorKind::kEmpty, 0, "tree has no vertices"};
  }
  if (parent[0] != kNoParent) {
    return TreeError{TreeErrorKind::kRootHasParent, 0,
                     "root 0 must not have a parent"};
  }
  const std::size_t count = parent.size();
  for (std::size_t v = 1; v < count; ++v) {
    if (parent[v] == kNoParent) {
      return TreeError{TreeErrorKind::kOrphan, static_cast<Vertex>(v),
                       "vertex " + std::to_string(v) + " has no parent"};
    }
    if (parent[v] >= count) {
      return TreeError{TreeErrorKind::kOutOfRange, static_cast<Vertex>(v),
                       "parent " + std::to_string(parent[v]) + " of vertex " +
                           std::to_string(v) + " is out of range"};
    }
  }
  if (is_increasing(parent)) return std::nullopt;

  const std::vector<Vertex> order = breadth_first_order(parent);
  if (order.size() == count) return std::nullopt;
  std::vector<std::uint8_t> reached(count, 0);
  for (Vertex v : order) reached[v] = 1;
  Vertex first = 1;
  while (reached[first]) ++first;
  return TreeError{TreeErrorKind::kCycle, first,
                   "vertex " + std::to_string(first) +
                       " does not reach the root (cycle)"};
}

Tree Tree::from_parents(std::vector<Vertex> parent) {
  if (auto error = validate(parent)) throw InvalidTree(std::move(*error));
  if (is_increasing(parent)) return Tree(std::move(parent), {});
  std::vector<Vertex> order = breadth_first_order(parent);
  return Tree(std::move(parent), std::move(order));
}

DepthTable depths(const Tree& tree) {
  DepthTable table;
  table.depth.assign(tree.vertex_count(), 0);
  auto& depth = table.depth;
  tree.for_each_top_down([&](Vertex v) {
    if (v != 0) depth[v] = depth[tree.parent(v)] + 1;
  });
  return table;
}

std::size_t PathMarker::add(const Tree& tree, Vertex v) {
  check_vertex(tree, v);
  std::size_t added = 0;
  while (v != 0 && !marked_[v]) {
    marked_[v] = 1;
    touched_.push_back(v);
    ++added;
    v = tree.parent(v);
  }
  return added;
}

void PathMarker::clear() {
  for (Vertex v : touched_) marked_[v] = 0;
  touched_.clear();
}

std::size_t reduced_length(const Tree& tree, std::span<const Vertex> targets,
                           PathMarker& marker) {
  for (Vertex v : targets) check_vertex(tree, v);
  std::size_t length = 0;
  for (Vertex v : targets) length += marker.add(tree, v);
  marker.clear();
  return length;
}

std::size_t reduced_length(const Tree& tree, std::span<const Vertex> targets) {
  PathMarker marker(tree.vertex_count());
  return reduced_length(tree, targets, marker);
}

std::uint32_t branchpoint_depth(const Tree& tree, Vertex v1, Vertex v2) {
  check_vertex(tree, v1);
  check_vertex(tree, v2);
  std::uint32_t d1 = depth_of(tree, v1);
  std::uint32_t d2 = depth_of(tree, v2);
  for (; d1 > d2; --d1) v1 = tree.parent(v1);
  for (; d2 > d1; --d2) v2 = tree.parent(v2);
  while (v1 != v2) {
    v1 = tree.parent(v1);
    v2 = tree.parent(v2);
    --d1;
  }
  return d1;
}

}  // namespace treeperc
