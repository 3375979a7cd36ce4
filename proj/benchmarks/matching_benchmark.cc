// Copyright 2026 The Envyfree Authors.
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

#include <cmath>
#include <vector>

#include "benchmark/benchmark.h"
#include "envyfree/matching.h"
#include "envyfree/rng.h"

namespace envyfree {
namespace {

BipartiteGraph RandomGraph(int left, int r, double p, std::uint64_t seed) {
  CounterStream s(seed, 0);
  std::vector<std::vector<int>> adj(left);
  for (int v = 0; v < left; ++v) {
    for (int w = 0; w < left * r; ++w) {
      if (s.NextUnit() < p) adj[v].push_back(w);
    }
  }
  return BipartiteGraph(left, left * r, std::move(adj));
}

void BM_FindPerfectRMatching(benchmark::State& state) {
  const int left = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  const BipartiteGraph g = RandomGraph(left, r, 4.0 * std::log(left * r + 1.0) / left, 1);
  for (auto _ : state) benchmark::DoNotOptimize(FindPerfectRMatching(g, r));
  state.counters["edges"] = static_cast<double>(g.edge_count());
}
BENCHMARK(BM_FindPerfectRMatching)
    ->ArgsProduct({{50, 200, 1000}, {1, 2, 4}})
    ->Unit(benchmark::kMicrosecond);

void BM_FindHallViolation(benchmark::State& state) {
  const int left = static_cast<int>(state.range(0));
  const BipartiteGraph g = RandomGraph(left, 2, 0.5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(FindHallViolation(g, 2));
}
BENCHMARK(BM_FindHallViolation)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace envyfree

BENCHMARK_MAIN();
