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

#include "treeperc/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace treeperc {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t count) : parent_(count), size_(count, 1) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

}  // namespace

double Scale::operator()(std::size_t n) const {
  const auto x = static_cast<double>(n);
  switch (kind) {
    case Kind::kLog: return std::log(x);
    case Kind::kSqrt: return std::sqrt(x);
    case Kind::kPower: return std::pow(x, alpha);
  }
  return 0.0;
}

double regime_p(std::size_t n, double c, Scale scale) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("percolation constant c must be >= 0");
  }
  if (c == 0.0) return 1.0;
  const double length = scale(n);
  if (!(c < length)) {
    throw std::invalid_argument("invalid regime: c = " + std::to_string(c) +
                                " is not below scale(n) = " +
                                std::to_string(length));
  }
  return 1.0 - c / length;
}

std::size_t EdgeMask::kept_count() const {
  return static_cast<std::size_t>(std::count(kept_.begin(), kept_.end(), 1));
}

EdgeMask percolate(const Tree& tree, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("retention probability must lie in [0, 1]");
  }
  const std::size_t n = tree.edge_count();
  EdgeMask mask(n);
  for (std::size_t v = 1; v <= n; ++v) {
    mask.set(static_cast<Vertex>(v), uniform01(rng) < p);
  }
  return mask;
}

EdgeMask threshold_mask(std::span<const double> uniforms, double p) {
  EdgeMask mask(uniforms.size());
  for (std::size_t i = 0; i < uniforms.size(); ++i) {
    mask.set(static_cast<Vertex>(i + 1), uniforms[i] < p);
  }
  return mask;
}

ClusterLabels label_clusters(const Tree& tree, const EdgeMask& mask) {
  ClusterLabels out;
  out.label.assign(tree.vertex_count(), 0);
  out.size.reserve(tree.edge_count() - mask.kept_count() + 1);
  out.size.push_back(1);
  auto& label = out.label;
  auto& size = out.size;
  tree.for_each_top_down([&](Vertex v) {
    if (v == 0) return;
    if (mask.kept(v)) {
      label[v] = label[tree.parent(v)];
      ++size[label[v]];
    } else {
      label[v] = static_cast<std::uint32_t>(size.size());
      size.push_back(1);
    }
  });
  return out;
}

ClusterLabels label_clusters_union_find(const Tree& tree, const EdgeMask& mask) {
  const std::size_t count = tree.vertex_count();
  DisjointSets sets(count);
  for (std::size_t v = 1; v < count; ++v) {
    if (mask.kept(static_cast<Vertex>(v))) {
      sets.unite(static_cast<std::uint32_t>(v), tree.parent(static_cast<Vertex>(v)));
    }
  }
  constexpr std::uint32_t kUnset = ~0u;
  std::vector<std::uint32_t> relabel(count, kUnset);
  ClusterLabels out;
  out.label.resize(count);
  for (std::size_t v = 0; v < count; ++v) {
    const std::uint32_t root = sets.find(static_cast<std::uint32_t>(v));
    if (relabel[root] == kUnset) {
      relabel[root] = static_cast<std::uint32_t>(out.size.size());
      out.size.push_back(0);
    }
    out.label[v] = relabel[root];
    ++out.size[out.label[v]];
  }
  return out;
}

PercolationOutcome cluster_sizes(const Tree& tree, const EdgeMask& mask) {
  if (mask.size() != tree.edge_count()) {
    throw std::invalid_argument("edge mask length does not match the tree");
  }
  const ClusterLabels labels = tree.increasing()
                                   ? label_clusters(tree, mask)
                                   : label_clusters_union_find(tree, mask);
  PercolationOutcome outcome;
  outcome.root_cluster_size = labels.size[labels.label[0]];
  outcome.cluster_count = labels.size.size();
  outcome.ranked_sizes.reserve(labels.size.size() - 1);
  for (std::size_t i = 0; i < labels.size.size(); ++i) {
    if (i != labels.label[0]) outcome.ranked_sizes.push_back(labels.size[i]);
  }
  std::sort(outcome.ranked_sizes.begin(), outcome.ranked_sizes.end(),
            std::greater<>());
  return outcome;
}

}  // namespace treeperc
