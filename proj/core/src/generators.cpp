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

#include "treeperc/generators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace treeperc {
namespace {

void require_edges(std::size_t n) {
  if (n == 0) throw std::invalid_argument("tree size n must be at least 1");
  if (n >= std::numeric_limits<Vertex>::max() - 1) {
    throw std::overflow_error("tree size n exceeds the vertex index range");
  }
}

void require_beta(double beta) {
  if (!(beta > -1.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be a finite real > -1, got " +
                                std::to_string(beta));
  }
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1), got " +
                                std::to_string(alpha));
  }
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kRecursive: return "recursive";
    case Family::kScaleFree: return "scalefree";
    case Family::kCayley: return "cayley";
    case Family::kDary: return "dary";
    case Family::kStar: return "star";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "recursive") return Family::kRecursive;
  if (name == "scalefree" || name == "scale_free") return Family::kScaleFree;
  if (name == "cayley") return Family::kCayley;
  if (name == "dary") return Family::kDary;
  if (name == "star") return Family::kStar;
  return std::nullopt;
}

std::size_t FamilySpec::edge_count() const {
  return family == Family::kDary ? dary_edge_count(d, h) : n;
}

void FamilySpec::check() const {
  switch (family) {
    case Family::kDary:
      if (d < 2) throw std::invalid_argument("dary trees need d >= 2");
      if (h < 1) throw std::invalid_argument("dary trees need h >= 1");
      dary_edge_count(d, h);
      return;
    case Family::kScaleFree:
      require_beta(beta);
      break;
    case Family::kStar:
      require_alpha(alpha);
      break;
    default:
      break;
  }
  require_edges(n);
}

Tree generate(const FamilySpec& spec, Rng& rng) {
  switch (spec.family) {
    case Family::kRecursive: return gen_recursive(spec.n, rng);
    case Family::kScaleFree: return gen_scale_free(spec.n, spec.beta, rng);
    case Family::kCayley: return gen_cayley(spec.n, rng);
    case Family::kDary: return gen_dary(spec.d, spec.h);
    case Family::kStar: return gen_star(spec.n, spec.alpha);
  }
  throw std::invalid_argument("unknown tree family");
}

Tree gen_recursive(std::size_t n, Rng& rng) {
  require_edges(n);
  std::vector<Vertex> parent(n + 1);
  parent[0] = kNoParent;
  for (std::size_t i = 1; i <= n; ++i) {
    parent[i] = static_cast<Vertex>(uniform_below(rng, i));
  }
  return Tree::from_parents(std::move(parent));
}

std::vector<double> scale_free_attachment_law(
    const std::vector<std::uint32_t>& degree, double beta) {
  require_beta(beta);
  double total = 0.0;
  for (auto d : degree) total += d + beta;
  std::vector<double> law(degree.size());
  for (std::size_t i = 0; i < degree.size(); ++i) {
    law[i] = (degree[i] + beta) / total;
  }
  return law;
}

ScaleFreeGrower::ScaleFreeGrower(double beta, std::size_t reserve)
    : beta_(beta) {
  require_beta(beta);
  parent_.reserve(reserve + 1);
  degree_.reserve(reserve + 1);
  endpoints_.reserve(2 * reserve);
  parent_ = {kNoParent, 0};
  degree_ = {1, 1};
  endpoints_ = {0, 1};
}

Vertex ScaleFreeGrower::sample_target(Rng& rng) const {
  const std::size_t m = edge_count();
  if (beta_ >= 0.0) {
    const double degree_mass = 2.0 * static_cast<double>(m);
    const double total = degree_mass + beta_ * static_cast<double>(m + 1);
    if (uniform01(rng) * total < degree_mass) {
      return endpoints_[uniform_below(rng, endpoints_.size())];
    }
    return static_cast<Vertex>(uniform_below(rng, m + 1));
  }
  for (;;) {
    const Vertex i = endpoints_[uniform_below(rng, endpoints_.size())];
    const double d = degree_[i];
    if (uniform01(rng) * d < d + beta_) return i;
  }
}

Vertex ScaleFreeGrower::step(Rng& rng) {
  const Vertex target = sample_target(rng);
  const auto v = static_cast<Vertex>(parent_.size());
  parent_.push_back(target);
  degree_.push_back(1);
  ++degree_[target];
  endpoints_.push_back(target);
  endpoints_.push_back(v);
  return target;
}

Tree ScaleFreeGrower::release() && {
  return Tree::from_parents(std::move(parent_));
}

Tree gen_scale_free(std::size_t n, double beta, Rng& rng) {
  require_edges(n);
  ScaleFreeGrower grower(beta, n);
  while (grower.edge_count() < n) grower.step(rng);
  return std::move(grower).release();
}

Tree tree_from_pruefer(const std::vector<Vertex>& sequence) {
  const std::size_t count = sequence.size() + 2;  // vertices
  std::vector<std::uint32_t> degree(count, 1);
  for (Vertex x : sequence) {
    if (x >= count) throw std::out_of_range("Pruefer entry out of range");
    ++degree[x];
  }

  // Linear-time decoding: `ptr` scans for the smallest leaf, and a freshly
  // created leaf below `ptr` is consumed immediately.
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(count - 1);
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  for (Vertex x : sequence) {
    edges.emplace_back(static_cast<Vertex>(leaf), x);
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(static_cast<Vertex>(leaf), static_cast<Vertex>(count - 1));

  // Re-root at 0.
  std::vector<std::uint32_t> offset(count + 1, 0);
  for (auto [a, b] : edges) {
    ++offset[a + 1];
    ++offset[b + 1];
  }
  for (std::size_t v = 0; v < count; ++v) offset[v + 1] += offset[v];
  std::vector<Vertex> adjacent(2 * edges.size());
  std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
  for (auto [a, b] : edges) {
    adjacent[cursor[a]++] = b;
    adjacent[cursor[b]++] = a;
  }
  std::vector<Vertex> parent(count, kNoParent);
  std::vector<Vertex> queue;
  queue.reserve(count);
  queue.push_back(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (std::uint32_t i = offset[u]; i < offset[u + 1]; ++i) {
      const Vertex w = adjacent[i];
      if (w != 0 && parent[w] == kNoParent) {
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  return Tree::from_parents(std::move(parent));
}

Tree gen_cayley(std::size_t n, Rng& rng) {
  require_edges(n);
  std::vector<Vertex> sequence(n - 1);
  for (auto& x : sequence) x = static_cast<Vertex>(uniform_below(rng, n + 1));
  return tree_from_pruefer(sequence);
}

std::size_t dary_edge_count(unsigned d, unsigned h) {
  if (d < 2 || h < 1) throw std::invalid_argument("dary trees need d >= 2, h >= 1");
  constexpr std::uint64_t kLimit = std::numeric_limits<Vertex>::max() - 1;
  std::uint64_t level = 1;
  std::uint64_t edges = 0;
  for (unsigned j = 1; j <= h; ++j) {
    if (level > kLimit / d) throw std::overflow_error("dary tree too large");
    level *= d;
    edges += level;
    if (edges >= kLimit) throw std::overflow_error("dary tree too large");
  }
  return static_cast<std::size_t>(edges);
}

Tree gen_dary(unsigned d, unsigned h) {
  const std::size_t n = dary_edge_count(d, h);
  std::vector<Vertex> parent(n + 1);
  parent[0] = kNoParent;
  for (std::size_t i = 1; i <= n; ++i) parent[i] = static_cast<Vertex>((i - 1) / d);
  return Tree::from_parents(std::move(parent));
}

std::size_t star_branch_count(std::size_t n, double alpha) {
  require_alpha(alpha);
  const double raw = std::pow(static_cast<double>(n), 1.0 - alpha);
  // Snap values within round-off of an integer, so 100^0.5 gives 10.
  const double nearest = std::round(raw);
  const double b = std::abs(raw - nearest) < 1e-9 * std::max(1.0, raw)
                       ? nearest
                       : std::floor(raw);
  return std::max<std::size_t>(1, std::min<std::size_t>(n, static_cast<std::size_t>(b)));
}

Tree gen_star(std::size_t n, double alpha) {
  require_edges(n);
  const std::size_t branches = star_branch_count(n, alpha);
  const std::size_t base = n / branches;
  const std::size_t extra = n % branches;
  std::vector<Vertex> parent(n + 1);
  parent[0] = kNoParent;
  std::size_t v = 1;
  for (std::size_t b = 0; b < branches; ++b) {
    const std::size_t length = base + (b < extra ? 1 : 0);
    for (std::size_t i = 0; i < length; ++i, ++v) {
      parent[v] = i == 0 ? 0 : static_cast<Vertex>(v - 1);
    }
  }
  return Tree::from_parents(std::move(parent));
}

}  // namespace treeperc
