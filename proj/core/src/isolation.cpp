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

#include "treeperc/isolation.hpp"

#include <cmath>
#include <stdexcept>

namespace treeperc {

IsolationTrace isolate_root(const Tree& tree, Rng& rng) {
  const std::size_t count = tree.vertex_count();
  const std::size_t n = tree.edge_count();
  if (n == 0) throw std::invalid_argument("cannot isolate the root of a single vertex");

  std::vector<std::uint32_t> offset(count + 1, 0);
  for (std::size_t v = 1; v < count; ++v) ++offset[tree.parent(static_cast<Vertex>(v)) + 1];
  for (std::size_t v = 0; v < count; ++v) offset[v + 1] += offset[v];
  std::vector<Vertex> children(n);
  {
    std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
    for (std::size_t v = 1; v < count; ++v) {
      children[cursor[tree.parent(static_cast<Vertex>(v))]++] = static_cast<Vertex>(v);
    }
  }

  // Edges of the root component, each named by its child endpoint.
  std::vector<Vertex> edges(n);
  std::vector<std::uint32_t> position(count, 0);
  for (std::size_t i = 0; i < n; ++i) {
    edges[i] = static_cast<Vertex>(i + 1);
    position[i + 1] = static_cast<std::uint32_t>(i);
  }
  std::vector<std::uint8_t> frozen(count, 0);
  std::vector<Vertex> stack;

  IsolationTrace trace;
  while (!edges.empty()) {
    const Vertex cut = edges[uniform_below(rng, edges.size())];
    std::uint32_t size = 0;
    stack.push_back(cut);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      frozen[u] = 1;
      ++size;
      const Vertex last = edges.back();
      edges[position[u]] = last;
      position[last] = position[u];
      edges.pop_back();
      for (std::uint32_t i = offset[u]; i < offset[u + 1]; ++i) {
        if (!frozen[children[i]]) stack.push_back(children[i]);
      }
    }
    trace.frozen_sizes.push_back(size);
  }
  return trace;
}

double eta_pmf(std::uint64_t j) {
  if (j == 0) throw std::invalid_argument("eta takes values j >= 1");
  const auto x = static_cast<double>(j);
  return 1.0 / (x * (x + 1.0));
}

double capped_eta_pmf(std::uint64_t j, std::uint64_t cap) {
  if (cap == 0) throw std::invalid_argument("eta cap must be >= 1");
  if (j == 0 || j > cap) return 0.0;
  const auto c = static_cast<double>(cap);
  return eta_pmf(j) * (c + 1.0) / c;
}

std::uint64_t sample_eta(Rng& rng, std::optional<std::uint64_t> cap) {
  if (cap && *cap == 0) throw std::invalid_argument("eta cap must be >= 1");
  for (;;) {
    const double u = uniform_open01(rng);
    const auto j = static_cast<std::uint64_t>(std::floor(1.0 / u));
    if (!cap || j <= *cap) return j;
  }
}

}  // namespace treeperc
