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

#include "benchmark/benchmark.h"
#include "envyfree/allocators.h"
#include "envyfree/instance.h"

namespace envyfree {
namespace {

void BM_WelfareMaximizing(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = GenerateInstance(n, 4 * n, DistributionSpec::Uniform(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(WelfareMaximizing(inst));
}
BENCHMARK(BM_WelfareMaximizing)->RangeMultiplier(4)->Range(16, 1024);

void BM_ThresholdMatching(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int r = 2;
  const Instance inst = GenerateInstance(n, r * n, DistributionSpec::Uniform(), 2);
  const double tau = SelectTau(inst, r, std::nullopt, TauRequest::Quantile(2.0)).resolved_tau;
  for (auto _ : state) benchmark::DoNotOptimize(ThresholdMatching(inst, r, tau));
}
BENCHMARK(BM_ThresholdMatching)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

void BM_ThresholdMatchingWithRemoval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  const Instance inst = GenerateInstance(n, r * n, DistributionSpec::Uniform(), 3);
  const double tau = SelectTau(inst, r, std::nullopt, TauRequest::Quantile(2.0)).resolved_tau;
  for (auto _ : state) {
    RemovalOutcome out = ThresholdMatchingWithRemoval(inst, r, tau);
    state.counters["removals"] = static_cast<double>(out.log.size());
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_ThresholdMatchingWithRemoval)
    ->ArgsProduct({{25, 100, 400}, {2, 4}})
    ->Unit(benchmark::kMicrosecond);

void BM_VerifyRemovalCertificates(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = GenerateInstance(n, 2 * n, DistributionSpec::Uniform(), 4);
  const double tau = SelectTau(inst, 2, std::nullopt, TauRequest::Quantile(2.0)).resolved_tau;
  const RemovalLog log = ThresholdMatchingWithRemoval(inst, 2, tau).log;
  for (auto _ : state) benchmark::DoNotOptimize(VerifyRemovalCertificates(inst, tau, 2, log));
  state.counters["entries"] = static_cast<double>(log.size());
}
BENCHMARK(BM_VerifyRemovalCertificates)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BruteForceEfExists(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const Instance inst = GenerateInstance(n, m, DistributionSpec::Uniform(), 5);
  for (auto _ : state) benchmark::DoNotOptimize(BruteForceEfExists(inst));
  state.counters["allocations"] = static_cast<double>(AllocationCount(n, m));
}
BENCHMARK(BM_BruteForceEfExists)
    ->Args({2, 8})
    ->Args({3, 7})
    ->Args({3, 9})
    ->Args({4, 8})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace envyfree

BENCHMARK_MAIN();
