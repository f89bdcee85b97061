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

#include <benchmark/benchmark.h>

#include <vector>

#include "treeperc/generators.hpp"
#include "treeperc/isolation.hpp"
#include "treeperc/percolation.hpp"

namespace {

using namespace treeperc;

void BM_GenRecursive(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gen_recursive(n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenRecursive)->Arg(1 << 16)->Arg(1 << 20);

void BM_GenScaleFree(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gen_scale_free(n, 0.0, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenScaleFree)->Arg(1 << 16)->Arg(1 << 20);

void BM_GenCayley(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gen_cayley(n, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenCayley)->Arg(1 << 16)->Arg(1 << 20);

void BM_PercolateAndLabel(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tree tree = state.range(1) ? gen_cayley(n, rng) : gen_recursive(n, rng);
  for (auto _ : state) {
    const EdgeMask mask = percolate(tree, 0.9, rng);
    benchmark::DoNotOptimize(cluster_sizes(tree, mask));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PercolateAndLabel)->Args({1 << 20, 0})->Args({1 << 20, 1});

void BM_ReducedLength(benchmark::State& state) {
  Rng rng(5);
  const std::size_t n = 1 << 20;
  const Tree tree = gen_recursive(n, rng);
  PathMarker marker(tree.vertex_count());
  std::vector<Vertex> targets(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (auto& v : targets) v = static_cast<Vertex>(uniform_below(rng, n + 1));
    benchmark::DoNotOptimize(reduced_length(tree, targets, marker));
  }
}
BENCHMARK(BM_ReducedLength)->Arg(1)->Arg(4)->Arg(64);

void BM_IsolateRoot(benchmark::State& state) {
  Rng rng(6);
  const Tree tree = gen_recursive(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(isolate_root(tree, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IsolateRoot)->Arg(1 << 16);

}  // namespace
BENCHMARK_MAIN();
