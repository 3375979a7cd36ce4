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

#include "envyfree/experiments.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "envyfree/errors.h"

namespace envyfree {
namespace {

std::uint64_t AlgorithmId(Algorithm algorithm) {
  return static_cast<std::uint64_t>(algorithm) + 1;
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::optional<PolyBoundParams> MaybePolyBound(const DistributionSpec& dist) {
  try {
    return AnalyticPolyBound(dist);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

Outcome ClassifyAllocation(const Instance& inst, const Allocation& alloc) {
  return IsEnvyFree(inst, alloc) ? Outcome::kEfAllocation : Outcome::kNonEfAllocation;
}

int ResolveWorkers(int workers, std::size_t count) {
  int resolved = workers;
  if (resolved <= 0) {
    resolved = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  }
  return static_cast<int>(std::min<std::size_t>(resolved, std::max<std::size_t>(count, 1)));
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kWelfareMax:
      return "welfare_max";
    case Algorithm::kAlg1:
      return "alg1";
    case Algorithm::kAlg2:
      return "alg2";
    case Algorithm::kBruteForce:
      return "brute_force";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "welfare_max" || name == "wmax") return Algorithm::kWelfareMax;
  if (name == "alg1") return Algorithm::kAlg1;
  if (name == "alg2") return Algorithm::kAlg2;
  if (name == "brute_force") return Algorithm::kBruteForce;
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kEfAllocation:
      return "ef_allocation";
    case Outcome::kNull:
      return "null";
    case Outcome::kNonEfAllocation:
      return "non_ef_allocation";
  }
  return "unknown";
}

Outcome ParseOutcome(std::string_view name) {
  if (name == "ef_allocation") return Outcome::kEfAllocation;
  if (name == "null") return Outcome::kNull;
  if (name == "non_ef_allocation") return Outcome::kNonEfAllocation;
  throw InvalidArgument("unknown outcome '" + std::string(name) + "'");
}

void SweepConfig::Validate() const {
  if (trials < 1) throw InvalidArgument("sweep: trials must be >= 1");
  for (const auto& [n, m] : grid) {
    if (n < 1 || m < 0) throw InvalidArgument("sweep: grid point needs n >= 1, m >= 0");
  }
}

bool IsScheduled(const SweepConfig& cfg, int n, int m, Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kWelfareMax:
      return true;
    case Algorithm::kAlg1:
      return m > 0 && m % n == 0;
    case Algorithm::kAlg2:
      return m > 0 && m % n == 0 && m / n >= 2;
    case Algorithm::kBruteForce:
      return AllocationCount(n, m) <= cfg.brute_cap;
  }
  return false;
}

std::uint64_t DeriveTrialSeed(std::uint64_t master_seed, int n, int m,
                              Algorithm algorithm, int trial_index) {
  return DeriveSeed({master_seed, static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(m), AlgorithmId(algorithm),
                     static_cast<std::uint64_t>(trial_index)});
}

TrialRecord RunTrial(const TrialPoint& point, int trial_index) {
  TrialRecord record;
  record.n = point.n;
  record.m = point.m;
  record.r = point.m / point.n;
  record.algorithm = point.algorithm;
  record.trial_index = trial_index;
  record.seed = DeriveTrialSeed(point.master_seed, point.n, point.m, point.algorithm,
                                trial_index);
  const Instance inst = GenerateInstance(point.n, point.m, point.dist, record.seed);

  const auto start = std::chrono::steady_clock::now();
  switch (point.algorithm) {
    case Algorithm::kWelfareMax: {
      record.allocation = WelfareMaximizing(inst);
      record.outcome = ClassifyAllocation(inst, *record.allocation);
      break;
    }
    case Algorithm::kAlg1: {
      const TauChoice tau = SelectTau(inst, record.r, MaybePolyBound(point.dist), point.tau);
      record.tau = tau.resolved_tau;
      record.allocation = ThresholdMatching(inst, record.r, tau.resolved_tau);
      record.outcome = record.allocation ? ClassifyAllocation(inst, *record.allocation)
                                         : Outcome::kNull;
      break;
    }
    case Algorithm::kAlg2: {
      const TauChoice tau = SelectTau(inst, record.r, MaybePolyBound(point.dist), point.tau);
      record.tau = tau.resolved_tau;
      RemovalOutcome result = ThresholdMatchingWithRemoval(inst, record.r, tau.resolved_tau);
      record.removals = static_cast<int>(result.log.size());
      record.certified =
          VerifyRemovalCertificates(inst, tau.resolved_tau, record.r, result.log).all_certified;
      record.allocation = std::move(result.allocation);
      record.outcome = record.allocation ? ClassifyAllocation(inst, *record.allocation)
                                         : Outcome::kNull;
      break;
    }
    case Algorithm::kBruteForce: {
      BruteForceResult result = BruteForceEfExists(inst, point.brute_cap, true);
      record.allocation = std::move(result.witness);
      record.outcome = result.exists ? Outcome::kEfAllocation : Outcome::kNull;
      break;
    }
  }
  record.runtime_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return record;
}

bool AuditRecord(const TrialRecord& record, const DistributionSpec& dist) {
  if (!record.allocation) return record.outcome == Outcome::kNull;
  const Instance inst = GenerateInstance(record.n, record.m, dist, record.seed);
  if (record.allocation->num_agents != inst.num_agents() ||
      record.allocation->num_items() != inst.num_items()) {
    return false;
  }
  const bool ef = IsEnvyFree(inst, *record.allocation);
  switch (record.outcome) {
    case Outcome::kEfAllocation:
      return ef;
    case Outcome::kNonEfAllocation:
      return !ef;
    case Outcome::kNull:
      return false;
  }
  return false;
}

Interval WilsonInterval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  // Clamp so that low <= p <= high survives rounding at p in {0, 1}.
  return {std::clamp(std::min(center - half, p), 0.0, 1.0),
          std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& body) {
  const int threads = ResolveWorkers(workers, count);
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= count) return;
      try {
        body(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SweepResult RunSweep(const SweepConfig& cfg, int workers) {
  cfg.Validate();
  SweepResult result;
  std::vector<TrialPoint> points;
  for (const auto& [n, m] : cfg.grid) {
    for (Algorithm algorithm : cfg.algorithms) {
      if (!IsScheduled(cfg, n, m, algorithm)) continue;
      points.push_back(
          TrialPoint{n, m, algorithm, cfg.dist, cfg.tau, cfg.master_seed, cfg.brute_cap});
    }
  }
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  result.records.resize(points.size() * trials);
  ParallelFor(result.records.size(), workers, [&](std::size_t task) {
    result.records[task] = RunTrial(points[task / trials], static_cast<int>(task % trials));
  });

  for (std::size_t p = 0; p < points.size(); ++p) {
    PointSummary summary;
    summary.n = points[p].n;
    summary.m = points[p].m;
    summary.r = points[p].m / points[p].n;
    summary.algorithm = points[p].algorithm;
    summary.trials = cfg.trials;
    for (std::size_t t = 0; t < trials; ++t) {
      const TrialRecord& record = result.records[p * trials + t];
      summary.successes += record.outcome != Outcome::kNull;
      summary.ef_count += record.outcome == Outcome::kEfAllocation;
      summary.total_removals += record.removals;
      summary.total_runtime_ns += record.runtime_ns;
    }
    const double nt = static_cast<double>(cfg.trials);
    summary.success_rate = static_cast<double>(summary.successes) / nt;
    summary.ef_rate = static_cast<double>(summary.ef_count) / nt;
    summary.ef_ci = WilsonInterval(summary.ef_count, cfg.trials);
    summary.mean_removals = static_cast<double>(summary.total_removals) / nt;
    summary.mean_runtime_ns = static_cast<double>(summary.total_runtime_ns) / nt;
    result.points.push_back(summary);
  }
  return result;
}

std::string SweepCsv(const SweepConfig& cfg, const SweepResult& result) {
  std::string out(kSweepCsvHeader);
  out += "\n";
  const std::string dist = cfg.dist.Label();
  const std::string tau = cfg.tau.Label();
  for (const PointSummary& s : result.points) {
    out += std::to_string(s.n) + "," + std::to_string(s.m) + "," + std::to_string(s.r) +
           "," + dist + "," + std::string(AlgorithmName(s.algorithm)) + "," + tau + "," +
           std::to_string(s.trials) + "," + FormatDouble(s.success_rate) + "," +
           FormatDouble(s.ef_rate) + "," + FormatDouble(s.ef_ci.low) + "," +
           FormatDouble(s.ef_ci.high) + "," + FormatDouble(s.mean_removals) + "," +
           std::to_string(cfg.master_seed) + "\n";
  }
  return out;
}

std::vector<CouponRow> CouponExperiment(int n, std::span<const int> m_values, int trials,
                                        std::uint64_t seed, const DistributionSpec& dist,
                                        int workers) {
  if (n < 1) throw InvalidArgument("coupon experiment: n must be >= 1");
  if (trials < 1) throw InvalidArgument("coupon experiment: trials must be >= 1");
  for (int m : m_values) {
    if (m < 0) throw InvalidArgument("coupon experiment: m must be >= 0");
  }
  const std::size_t per = static_cast<std::size_t>(trials);
  // 0: nothing, bit 0: some agent empty, bit 1: envy-free.
  std::vector<unsigned char> flags(m_values.size() * per, 0);
  ParallelFor(flags.size(), workers, [&](std::size_t task) {
    const int m = m_values[task / per];
    const auto trial = static_cast<std::uint64_t>(task % per);
    const Instance inst = GenerateInstance(
        n, m, dist,
        DeriveSeed({seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m), trial}));
    const Allocation alloc = WelfareMaximizing(inst);
    const auto sizes = alloc.BundleSizes();
    unsigned char f = 0;
    if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) f |= 1;
    if (IsEnvyFree(inst, alloc)) f |= 2;
    flags[task] = f;
  });
  std::vector<CouponRow> rows;
  for (std::size_t k = 0; k < m_values.size(); ++k) {
    CouponRow row;
    row.m = m_values[k];
    row.trials = trials;
    for (std::size_t t = 0; t < per; ++t) {
      row.empty_agent_count += flags[k * per + t] & 1;
      row.ef_count += (flags[k * per + t] >> 1) & 1;
    }
    row.empty_agent_rate = static_cast<double>(row.empty_agent_count) / trials;
    row.ef_rate = static_cast<double>(row.ef_count) / trials;
    rows.push_back(row);
  }
  return rows;
}

ContrastResult DivisibilityContrast(int n, int r, int trials, std::uint64_t seed,
                                    std::uint64_t cap, const DistributionSpec& dist,
                                    int workers) {
  if (n < 1) throw InvalidArgument("divisibility contrast: n must be >= 1");
  if (r < 1) throw InvalidArgument("divisibility contrast: r must be >= 1");
  if (trials < 1) throw InvalidArgument("divisibility contrast: trials must be >= 1");
  ContrastResult result;
  result.n = n;
  result.r = r;
  result.trials = trials;
  result.m_divisible = r * n;
  result.m_offset = r * n + std::max(1, n / 2);
  for (int m : {result.m_divisible, result.m_offset}) {
    if (AllocationCount(n, m) > cap) {
      throw CapExceeded("divisibility contrast: n^m exceeds cap at m = " + std::to_string(m));
    }
  }
  const std::size_t per = static_cast<std::size_t>(trials);
  std::vector<unsigned char> exists(2 * per, 0);
  ParallelFor(exists.size(), workers, [&](std::size_t task) {
    const int m = task < per ? result.m_divisible : result.m_offset;
    const auto trial = static_cast<std::uint64_t>(task % per);
    const Instance inst = GenerateInstance(
        n, m, dist,
        DeriveSeed({seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m), trial}));
    exists[task] = BruteForceEfExists(inst, cap, true).exists ? 1 : 0;
  });
  for (std::size_t t = 0; t < per; ++t) {
    result.exists_divisible += exists[t];
    result.exists_offset += exists[per + t];
  }
  const double nt = static_cast<double>(trials);
  result.p_divisible = static_cast<double>(result.exists_divisible) / nt;
  result.p_offset = static_cast<double>(result.exists_offset) / nt;
  result.se_divisible = std::sqrt(result.p_divisible * (1.0 - result.p_divisible) / nt);
  result.se_offset = std::sqrt(result.p_offset * (1.0 - result.p_offset) / nt);
  result.ci_divisible = WilsonInterval(result.exists_divisible, trials);
  result.ci_offset = WilsonInterval(result.exists_offset, trials);
  return result;
}

}  // namespace envyfree
