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

#include "envyfree/allocators.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "envyfree/analysis.h"
#include "envyfree/errors.h"

namespace envyfree {
namespace {

void RequireDivisible(const Instance& inst, int r, const char* who) {
  if (r < 1) throw InvalidArgument(std::string(who) + ": r must be >= 1");
  if (static_cast<long long>(inst.num_items()) !=
      static_cast<long long>(r) * inst.num_agents()) {
    throw InvalidArgument(std::string(who) + ": need m = r*n (m = " +
                          std::to_string(inst.num_items()) + ", n = " +
                          std::to_string(inst.num_agents()) + ", r = " +
                          std::to_string(r) + ")");
  }
}

void RequireOpenUnitTau(double tau, const char* who) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw InvalidArgument(std::string(who) + ": tau must lie in (0,1)");
  }
}

std::optional<Allocation> MatchCandidates(const Instance& inst, int r,
                                          std::vector<std::vector<int>> candidates) {
  const BipartiteGraph g(inst.num_agents(), inst.num_items(), std::move(candidates));
  auto matching = FindPerfectRMatching(g, r);
  if (!matching) return std::nullopt;
  std::vector<int> owner(inst.num_items(), -1);
  for (int i = 0; i < inst.num_agents(); ++i) {
    for (int j : matching->assignment[i]) owner[j] = i;
  }
  return Allocation{inst.num_agents(), std::move(owner)};
}

std::vector<std::vector<int>> ThresholdCandidates(const Instance& inst, double tau) {
  std::vector<std::vector<int>> candidates(inst.num_agents());
  for (int i = 0; i < inst.num_agents(); ++i) {
    const auto row = inst.row(i);
    for (int j = 0; j < inst.num_items(); ++j) {
      if (row[j] >= tau) candidates[i].push_back(j);
    }
  }
  return candidates;
}

}  // namespace

Allocation WelfareMaximizing(const Instance& inst) {
  std::vector<int> owner(inst.num_items(), 0);
  for (int j = 0; j < inst.num_items(); ++j) {
    int best = 0;
    for (int i = 1; i < inst.num_agents(); ++i) {
      if (inst.utility(i, j) > inst.utility(best, j)) best = i;
    }
    owner[j] = best;
  }
  return Allocation{inst.num_agents(), std::move(owner)};
}

std::string TauRequest::Label() const {
  char buf[32];
  const std::string number(buf, std::to_chars(buf, buf + sizeof(buf), value).ptr);
  switch (mode) {
    case Mode::kConstant:
      return "constant:" + number;
    case Mode::kFixed:
      return "fixed:" + number;
    case Mode::kQuantile:
      return "quantile:" + number;
  }
  return number;
}

TauChoice SelectTau(const Instance& inst, int r,
                    const std::optional<PolyBoundParams>& params,
                    const TauRequest& request) {
  RequireDivisible(inst, r, "select_tau");
  const std::int64_t n = inst.num_agents();
  const std::int64_t m = inst.num_items();
  double tau = 0.0;
  switch (request.mode) {
    case TauRequest::Mode::kConstant:
      if (!params) {
        throw InvalidArgument(
            "select_tau: constant mode needs polynomial-bound parameters");
      }
      tau = ConstantTau(request.value, n, m, *params);
      if (!(tau > 0.0)) {
        throw InvalidArgument("threshold non-positive: n too small for this constant (tau = " +
                              std::to_string(tau) + ")");
      }
      break;
    case TauRequest::Mode::kFixed:
      tau = request.value;
      break;
    case TauRequest::Mode::kQuantile: {
      if (!(request.value > 0.0)) throw InvalidArgument("select_tau: kappa must be positive");
      const double level = 1.0 - request.value * std::log(static_cast<double>(m)) /
                                     static_cast<double>(n);
      if (!(level > 0.0 && level < 1.0)) {
        throw InvalidArgument("select_tau: quantile level 1 - kappa*log(m)/n = " +
                              std::to_string(level) + " is outside (0,1)");
      }
      std::vector<double> all(inst.utilities().begin(), inst.utilities().end());
      const auto index = static_cast<std::size_t>(
          std::floor(level * static_cast<double>(all.size() - 1)));
      std::nth_element(all.begin(), all.begin() + index, all.end());
      tau = all[index];
      break;
    }
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw InvalidArgument("select_tau: resolved tau " + std::to_string(tau) +
                          " is outside (0,1)");
  }
  return TauChoice{request, tau};
}

BipartiteGraph ThresholdGraph(const Instance& inst, double tau) {
  return BipartiteGraph(inst.num_agents(), inst.num_items(),
                        ThresholdCandidates(inst, tau));
}

std::optional<Allocation> ThresholdMatching(const Instance& inst, int r, double tau) {
  RequireDivisible(inst, r, "threshold_matching");
  RequireOpenUnitTau(tau, "threshold_matching");
  return MatchCandidates(inst, r, ThresholdCandidates(inst, tau));
}

double RTimesTau(int r, double tau) {
  double total = 0.0;
  for (int k = 0; k < r; ++k) total += tau;
  return total;
}

std::vector<std::vector<int>> PruneCandidates(const Instance& inst, int r,
                                              double tau, RemovalLog* log) {
  const int n = inst.num_agents();
  const double limit = RTimesTau(r, tau);
  auto candidates = ThresholdCandidates(inst, tau);
  int step = log ? static_cast<int>(log->size()) : 0;
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    auto& cand = candidates[i];
    for (int other = 0; other < n; ++other) {
      if (other == i) continue;
      const auto row = inst.row(other);
      while (true) {
        values.clear();
        for (int j : cand) values.push_back(row[j]);
        if (!(SumTopR(values, r) > limit)) break;
        // First maximum in ascending item order.
        const auto best = std::max_element(
            cand.begin(), cand.end(), [&row](int a, int b) { return row[a] < row[b]; });
        if (log) log->push_back(RemovalEntry{i, *best, other, step});
        ++step;
        cand.erase(best);
      }
    }
  }
  return candidates;
}

RemovalOutcome ThresholdMatchingWithRemoval(const Instance& inst, int r, double tau) {
  RequireDivisible(inst, r, "threshold_matching_with_removal");
  if (r < 2) throw InvalidArgument("threshold_matching_with_removal: r must be >= 2");
  RequireOpenUnitTau(tau, "threshold_matching_with_removal");

  RemovalOutcome outcome;
  auto candidates = PruneCandidates(inst, r, tau, &outcome.log);
  outcome.allocation = MatchCandidates(inst, r, std::move(candidates));
  if (outcome.allocation) {
    if (!IsBalanced(*outcome.allocation, r)) {
      throw InternalError("threshold_matching_with_removal: unbalanced output");
    }
    const EnvyReport envy = CheckEnvy(inst, *outcome.allocation);
    if (!envy.envy_free) {
      throw InternalError("threshold_matching_with_removal: output not envy-free (agent " +
                          std::to_string(envy.witness->envious) + " envies " +
                          std::to_string(envy.witness->envied) + ")");
    }
  }
  return outcome;
}

CertificateReport VerifyRemovalCertificates(const Instance& inst, double tau, int r,
                                            const RemovalLog& log) {
  const int n = inst.num_agents();
  const int m = inst.num_items();
  CertificateReport report;
  report.tau_prime = TauPrime(tau);
  report.degenerate_tau_prime = !(report.tau_prime > 0.0);

  auto above = [&](int agent, int item) {
    return inst.utility(agent, item) > report.tau_prime;
  };
  auto shared = [&](int a, int b) {
    int count = 0;
    for (int j = 0; j < m; ++j) count += above(a, j) && above(b, j);
    return count;
  };
  // |intersection| > 2r/3, in integers.
  auto large = [r](int size) { return 3LL * size > 2LL * r; };

  for (const RemovalEntry& entry : log) {
    CertificateDetail detail;
    detail.entry = entry;
    const bool in_range = entry.agent >= 0 && entry.agent < n && entry.item >= 0 &&
                          entry.item < m;
    if (in_range) {
      detail.edge_in_threshold_graph = inst.utility(entry.agent, entry.item) >= tau;
      std::vector<int> order;
      if (entry.trigger >= 0 && entry.trigger < n && entry.trigger != entry.agent) {
        order.push_back(entry.trigger);
      }
      for (int k = 0; k < n; ++k) {
        if (k != entry.agent && k != entry.trigger) order.push_back(k);
      }
      if (above(entry.agent, entry.item)) {
        for (int k : order) {
          if (!above(k, entry.item)) continue;
          const int size = shared(entry.agent, k);
          detail.intersection_size = std::max(detail.intersection_size, size);
          if (large(size)) {
            detail.witness = k;
            detail.intersection_size = size;
            break;
          }
        }
      }
    }
    detail.certified = detail.edge_in_threshold_graph && detail.witness.has_value();
    report.all_certified = report.all_certified && detail.certified;
    report.details.push_back(detail);
  }
  return report;
}

std::uint64_t AllocationCount(int n, int m) {
  if (n < 0 || m < 0) throw InvalidArgument("allocation count: negative size");
  std::uint64_t total = 1;
  for (int k = 0; k < m; ++k) {
    if (n != 0 && total > std::numeric_limits<std::uint64_t>::max() / n) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= static_cast<std::uint64_t>(n);
  }
  return total;
}

BruteForceResult BruteForceEfExists(const Instance& inst, std::uint64_t cap,
                                    bool stop_at_first) {
  const int n = inst.num_agents();
  const int m = inst.num_items();
  const std::uint64_t total = AllocationCount(n, m);
  if (total > cap) {
    throw CapExceeded("brute force: n^m = " +
                      (total == std::numeric_limits<std::uint64_t>::max()
                           ? std::string("overflow")
                           : std::to_string(total)) +
                      " exceeds cap " + std::to_string(cap));
  }

  BruteForceResult result;
  std::vector<int> owner(m, 0);
  std::vector<std::vector<int>> bundles(n);
  std::vector<double> scratch;
  std::vector<double> own(n);

  // Bundle values use CanonicalSumInPlace, which is what IsEnvyFree uses, so
  // the verdicts agree bit for bit.
  auto bundle_value = [&](int agent, const std::vector<int>& items) {
    scratch.clear();
    for (int j : items) scratch.push_back(inst.utility(agent, j));
    return CanonicalSumInPlace(scratch);
  };
  auto envy_free = [&]() {
    for (auto& b : bundles) b.clear();
    for (int j = 0; j < m; ++j) bundles[owner[j]].push_back(j);
    for (int i = 0; i < n; ++i) own[i] = bundle_value(i, bundles[i]);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        if (k != i && bundle_value(i, bundles[k]) > own[i]) return false;
      }
    }
    return true;
  };

  for (std::uint64_t visited = 0; visited < total; ++visited) {
    if (envy_free()) {
      ++result.count;
      if (!result.witness) result.witness = Allocation{n, owner};
      if (stop_at_first) break;
    }
    // Odometer step, item 0 fastest.
    for (int j = 0; j < m; ++j) {
      if (++owner[j] < n) break;
      owner[j] = 0;
    }
  }
  result.exists = result.count > 0;
  return result;
}

}  // namespace envyfree
