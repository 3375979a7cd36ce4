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

#ifndef ENVYFREE_EXPERIMENTS_H_
#define ENVYFREE_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "envyfree/allocators.h"
#include "envyfree/distributions.h"
#include "envyfree/instance.h"

namespace envyfree {

enum class Algorithm { kWelfareMax, kAlg1, kAlg2, kBruteForce };

// "welfare_max", "alg1", "alg2", "brute_force".
std::string_view AlgorithmName(Algorithm algorithm);
// Accepts the names above plus the short alias "wmax".
Algorithm ParseAlgorithm(std::string_view name);

struct SweepConfig {
  std::vector<std::pair<int, int>> grid;  // (n, m)
  DistributionSpec dist = DistributionSpec::Uniform();
  int trials = 1;
  std::vector<Algorithm> algorithms;
  TauRequest tau = TauRequest::Quantile(2.0);
  std::uint64_t master_seed = 0;
  std::uint64_t brute_cap = kDefaultBruteForceCap;

  // Throws InvalidArgument for trials < 1 or a grid point with n < 1 or m < 0.
  void Validate() const;
};

// Whether `algorithm` runs at (n, m): threshold algorithms need m = r * n
// (r >= 2 for alg2), brute force needs n^m <= brute_cap.
bool IsScheduled(const SweepConfig& cfg, int n, int m, Algorithm algorithm);

struct TrialPoint {
  int n = 1;
  int m = 0;
  Algorithm algorithm = Algorithm::kWelfareMax;
  DistributionSpec dist = DistributionSpec::Uniform();
  TauRequest tau = TauRequest::Quantile(2.0);
  std::uint64_t master_seed = 0;
  std::uint64_t brute_cap = kDefaultBruteForceCap;
};

enum class Outcome { kEfAllocation, kNull, kNonEfAllocation };

// "ef_allocation", "null", "non_ef_allocation".
std::string_view OutcomeName(Outcome outcome);
Outcome ParseOutcome(std::string_view name);

struct TrialRecord {
  int n = 0;
  int m = 0;
  int r = 0;  // m / n, rounded down
  Algorithm algorithm = Algorithm::kWelfareMax;
  int trial_index = 0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::kNull;
  int removals = 0;
  std::int64_t runtime_ns = 0;
  std::optional<double> tau;
  std::optional<Allocation> allocation;
  // Alg2 only: every removal certified.
  std::optional<bool> certified;
};

// Mix64-fold of (master_seed, n, m, algorithm id, trial_index); the instance
// for a trial is GenerateInstance(n, m, dist, DeriveTrialSeed(...)).
std::uint64_t DeriveTrialSeed(std::uint64_t master_seed, int n, int m,
                              Algorithm algorithm, int trial_index);

// Generates the instance, runs the algorithm and audits the output (envy,
// balance, and removal certificates for alg2). Deterministic apart from
// runtime_ns. Allocator errors propagate.
TrialRecord RunTrial(const TrialPoint& point, int trial_index);

// Regenerates the record's instance and re-checks a stored allocation. True
// iff the stored outcome is consistent with the envy check.
bool AuditRecord(const TrialRecord& record, const DistributionSpec& dist);

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval; z defaults to the two-sided 95% quantile.
Interval WilsonInterval(std::int64_t successes, std::int64_t trials,
                        double z = 1.959963984540054);

struct PointSummary {
  int n = 0;
  int m = 0;
  int r = 0;
  Algorithm algorithm = Algorithm::kWelfareMax;
  int trials = 0;
  std::int64_t successes = 0;  // non-null outputs
  std::int64_t ef_count = 0;   // envy-free outputs
  std::int64_t total_removals = 0;
  std::int64_t total_runtime_ns = 0;
  double success_rate = 0.0;
  double ef_rate = 0.0;
  Interval ef_ci;  // Wilson interval on ef_rate
  double mean_removals = 0.0;
  double mean_runtime_ns = 0.0;
};

struct SweepResult {
  std::vector<PointSummary> points;
  // Grouped by point in summary order, trial index ascending within a point.
  std::vector<TrialRecord> records;
};

// Runs every scheduled (grid point, algorithm, trial). Trials may execute on
// up to `workers` threads (0 = hardware concurrency); results do not depend
// on the worker count.
SweepResult RunSweep(const SweepConfig& cfg, int workers = 0);

inline constexpr std::string_view kSweepCsvHeader =
    "n,m,r,dist,algorithm,tau_mode,trials,success_rate,ef_rate,ci_low,ci_high,"
    "mean_removals,master_seed";

// Header plus one row per point summary. Numbers use shortest round-trip
// formatting, so equal results give byte-identical output.
std::string SweepCsv(const SweepConfig& cfg, const SweepResult& result);

struct CouponRow {
  int m = 0;
  int trials = 0;
  std::int64_t empty_agent_count = 0;
  std::int64_t ef_count = 0;
  double empty_agent_rate = 0.0;
  double ef_rate = 0.0;
};

// Welfare-maximizing allocation on `trials` instances per m: how often some
// agent ends up with no item and how often the allocation is envy-free.
std::vector<CouponRow> CouponExperiment(int n, std::span<const int> m_values, int trials,
                                        std::uint64_t seed,
                                        const DistributionSpec& dist = DistributionSpec::Uniform(),
                                        int workers = 0);

struct ContrastResult {
  int n = 0;
  int r = 0;
  int m_divisible = 0;  // r * n
  int m_offset = 0;     // r * n + max(1, floor(n / 2))
  int trials = 0;
  std::int64_t exists_divisible = 0;
  std::int64_t exists_offset = 0;
  double p_divisible = 0.0;
  double p_offset = 0.0;
  double se_divisible = 0.0;  // binomial standard errors
  double se_offset = 0.0;
  Interval ci_divisible;
  Interval ci_offset;
};

// Estimates Pr[an envy-free allocation exists] by brute force at m = r*n and
// m = r*n + max(1, floor(n/2)). Throws CapExceeded if either n^m exceeds `cap`.
ContrastResult DivisibilityContrast(int n, int r, int trials, std::uint64_t seed,
                                    std::uint64_t cap = kDefaultBruteForceCap,
                                    const DistributionSpec& dist = DistributionSpec::Uniform(),
                                    int workers = 0);

// Calls body(k) for k in [0, count) on up to `workers` threads
// (0 = hardware concurrency). The first exception thrown is rethrown.
void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& body);

}  // namespace envyfree

#endif  // ENVYFREE_EXPERIMENTS_H_
