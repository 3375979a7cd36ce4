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

#ifndef ENVYFREE_INSTANCE_H_
#define ENVYFREE_INSTANCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "envyfree/distributions.h"

namespace envyfree {

// An n x m utility matrix with the provenance needed to regenerate it.
// Agents and items are 0-indexed.
class Instance {
 public:
  // Throws DimensionMismatch if utilities.size() != n * m and
  // InvalidArgument if n < 1, m < 0 or an entry lies outside [0, 1].
  Instance(int num_agents, int num_items, std::vector<double> utilities,
           std::uint64_t seed, DistributionSpec dist);

  int num_agents() const { return num_agents_; }
  int num_items() const { return num_items_; }
  std::uint64_t seed() const { return seed_; }
  const DistributionSpec& dist() const { return dist_; }

  double utility(int agent, int item) const {
    return utilities_[static_cast<std::size_t>(agent) * num_items_ + item];
  }
  std::span<const double> row(int agent) const {
    return {utilities_.data() + static_cast<std::size_t>(agent) * num_items_,
            static_cast<std::size_t>(num_items_)};
  }
  std::span<const double> utilities() const { return utilities_; }

 private:
  int num_agents_;
  int num_items_;
  std::vector<double> utilities_;
  std::uint64_t seed_;
  DistributionSpec dist_;
};

// Stream id used for utility draws; entry (i, j) is draw i * m + j.
inline constexpr std::uint64_t kUtilityStream = 0;

Instance GenerateInstance(int num_agents, int num_items,
                          const DistributionSpec& dist, std::uint64_t seed);

// A partition of the items: owner[j] is the agent holding item j.
struct Allocation {
  int num_agents = 0;
  std::vector<int> owner;

  int num_items() const { return static_cast<int>(owner.size()); }
  std::vector<std::vector<int>> Bundles() const;
  std::vector<int> BundleSizes() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Validating constructor; throws InvalidArgument for an owner outside
// [0, num_agents).
Allocation MakeAllocation(int num_agents, std::vector<int> owner);

// Sum of values taken in descending order. Every bundle value in the library
// goes through this, so two multisets compare the same way no matter how
// their items happen to be listed.
double CanonicalSum(std::vector<double> values);
// Same summation, reordering `values` in place.
double CanonicalSumInPlace(std::span<double> values);

// Sum of the r largest values, or of all values if there are fewer than r.
double SumTopR(std::span<const double> values, int r);

// u_agent(items). Throws InvalidArgument for out-of-range indices.
double BundleUtility(const Instance& inst, int agent, std::span<const int> items);

struct EnvyWitness {
  int envious = 0;
  int envied = 0;
  double deficit = 0.0;  // u_envious(M_envied) - u_envious(M_envious) > 0
};

struct EnvyReport {
  bool envy_free = true;
  // max(0, max_j u_i(M_j) - u_i(M_i)) for each agent i.
  std::vector<double> max_envy;
  // Most envious pair; lowest (envious, envied) among equal deficits.
  std::optional<EnvyWitness> witness;
};

// Exact comparison, no tolerance. Throws DimensionMismatch when the
// allocation does not fit the instance.
EnvyReport CheckEnvy(const Instance& inst, const Allocation& alloc);
bool IsEnvyFree(const Instance& inst, const Allocation& alloc);

// True iff every agent owns exactly r items.
bool IsBalanced(const Allocation& alloc, int r);

}  // namespace envyfree

#endif  // ENVYFREE_INSTANCE_H_
