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

#include "envyfree/instance.h"

#include <algorithm>
#include <functional>
#include <string>

#include "envyfree/errors.h"

namespace envyfree {

Instance::Instance(int num_agents, int num_items, std::vector<double> utilities,
                   std::uint64_t seed, DistributionSpec dist)
    : num_agents_(num_agents),
      num_items_(num_items),
      utilities_(std::move(utilities)),
      seed_(seed),
      dist_(std::move(dist)) {
  if (num_agents < 1) throw InvalidArgument("instance needs at least one agent");
  if (num_items < 0) throw InvalidArgument("item count must be nonnegative");
  if (utilities_.size() !=
      static_cast<std::size_t>(num_agents) * static_cast<std::size_t>(num_items)) {
    throw DimensionMismatch("utility matrix has " +
                            std::to_string(utilities_.size()) +
                            " entries, expected n*m = " +
                            std::to_string(static_cast<long long>(num_agents) * num_items));
  }
  for (double u : utilities_) {
    if (!(u >= 0.0 && u <= 1.0)) {
      throw InvalidArgument("utilities must lie in [0,1]");
    }
  }
}

Instance GenerateInstance(int num_agents, int num_items,
                          const DistributionSpec& dist, std::uint64_t seed) {
  if (num_agents < 1) throw InvalidArgument("generate: n must be >= 1");
  if (num_items < 0) throw InvalidArgument("generate: m must be >= 0");
  CounterStream stream(seed, kUtilityStream);
  std::vector<double> utilities(static_cast<std::size_t>(num_agents) * num_items);
  for (double& u : utilities) u = Sample(dist, stream);
  return Instance(num_agents, num_items, std::move(utilities), seed, dist);
}

std::vector<std::vector<int>> Allocation::Bundles() const {
  std::vector<std::vector<int>> bundles(num_agents);
  for (int j = 0; j < num_items(); ++j) bundles[owner[j]].push_back(j);
  return bundles;
}

std::vector<int> Allocation::BundleSizes() const {
  std::vector<int> sizes(num_agents, 0);
  for (int agent : owner) ++sizes[agent];
  return sizes;
}

Allocation MakeAllocation(int num_agents, std::vector<int> owner) {
  if (num_agents < 1) throw InvalidArgument("allocation needs at least one agent");
  for (int agent : owner) {
    if (agent < 0 || agent >= num_agents) {
      throw InvalidArgument("allocation owner " + std::to_string(agent) +
                            " out of range");
    }
  }
  return Allocation{num_agents, std::move(owner)};
}

double CanonicalSumInPlace(std::span<double> values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

double CanonicalSum(std::vector<double> values) {
  return CanonicalSumInPlace(values);
}

double SumTopR(std::span<const double> values, int r) {
  if (r < 0) throw InvalidArgument("sum_top_r: r must be >= 0");
  std::vector<double> top(values.begin(), values.end());
  if (static_cast<std::size_t>(r) < top.size()) {
    std::nth_element(top.begin(), top.begin() + r, top.end(), std::greater<>());
    top.resize(r);
  }
  return CanonicalSum(std::move(top));
}

double BundleUtility(const Instance& inst, int agent, std::span<const int> items) {
  if (agent < 0 || agent >= inst.num_agents()) {
    throw InvalidArgument("bundle_utility: agent out of range");
  }
  std::vector<double> values;
  values.reserve(items.size());
  for (int j : items) {
    if (j < 0 || j >= inst.num_items()) {
      throw InvalidArgument("bundle_utility: item out of range");
    }
    values.push_back(inst.utility(agent, j));
  }
  return CanonicalSum(std::move(values));
}

EnvyReport CheckEnvy(const Instance& inst, const Allocation& alloc) {
  if (alloc.num_agents != inst.num_agents() || alloc.num_items() != inst.num_items()) {
    throw DimensionMismatch("allocation does not match instance dimensions");
  }
  const int n = inst.num_agents();
  const auto bundles = alloc.Bundles();
  EnvyReport report;
  report.max_envy.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double own = BundleUtility(inst, i, bundles[i]);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      const double other = BundleUtility(inst, i, bundles[k]);
      if (other > own) {
        const double deficit = other - own;
        report.envy_free = false;
        report.max_envy[i] = std::max(report.max_envy[i], deficit);
        if (!report.witness || deficit > report.witness->deficit) {
          report.witness = EnvyWitness{i, k, deficit};
        }
      }
    }
  }
  return report;
}

bool IsEnvyFree(const Instance& inst, const Allocation& alloc) {
  return CheckEnvy(inst, alloc).envy_free;
}

bool IsBalanced(const Allocation& alloc, int r) {
  if (r < 0) return false;
  const auto sizes = alloc.BundleSizes();
  return std::all_of(sizes.begin(), sizes.end(), [r](int s) { return s == r; });
}

}  // namespace envyfree
