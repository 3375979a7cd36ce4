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

#ifndef ENVYFREE_ALLOCATORS_H_
#define ENVYFREE_ALLOCATORS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "envyfree/distributions.h"
#include "envyfree/instance.h"
#include "envyfree/matching.h"

namespace envyfree {

// Gives each item to the agent valuing it most, lowest agent index on ties.
Allocation WelfareMaximizing(const Instance& inst);

// How the utility threshold tau is chosen.
struct TauRequest {
  enum class Mode { kConstant, kFixed, kQuantile };

  Mode mode = Mode::kQuantile;
  // c for kConstant, tau for kFixed, kappa for kQuantile.
  double value = 2.0;

  static TauRequest Constant(double c = 64.0) { return {Mode::kConstant, c}; }
  static TauRequest Fixed(double tau) { return {Mode::kFixed, tau}; }
  static TauRequest Quantile(double kappa = 2.0) { return {Mode::kQuantile, kappa}; }

  // "constant:64", "fixed:0.9", "quantile:2".
  std::string Label() const;

  friend bool operator==(const TauRequest&, const TauRequest&) = default;
};

struct TauChoice {
  TauRequest request;
  double resolved_tau = 0.0;  // in (0, 1)
};

// Resolves tau for an instance with m = r * n.
//   kConstant: 1 - (c log m / (theta_lower n))^(1/q); needs `params`.
//   kQuantile: the empirical (1 - kappa log m / n)-quantile of all n*m
//              utilities (lower order statistic, no interpolation).
//   kFixed:    passed through.
// Throws InvalidArgument when m != r * n, when params are missing in constant
// mode, or when the resolved tau falls outside (0, 1), e.g. "threshold
// non-positive: n too small for this constant".
TauChoice SelectTau(const Instance& inst, int r,
                    const std::optional<PolyBoundParams>& params,
                    const TauRequest& request);

// G_{>=tau}: edge (i, j) iff u_i(j) >= tau.
BipartiteGraph ThresholdGraph(const Instance& inst, double tau);

// Allocation induced by a perfect r-matching of G_{>=tau}, or nullopt.
// Throws InvalidArgument if m != r * n, r < 1 or tau is outside (0, 1).
std::optional<Allocation> ThresholdMatching(const Instance& inst, int r, double tau);

// One pruned edge: `item` left agent `agent`'s candidate set because
// `trigger` valued the agent's top r candidates above r * tau. `step` counts
// removals from 0 in execution order.
struct RemovalEntry {
  int agent = 0;
  int item = 0;
  int trigger = 0;
  int step = 0;

  friend bool operator==(const RemovalEntry&, const RemovalEntry&) = default;
};

using RemovalLog = std::vector<RemovalEntry>;

// Fl-sum of r copies of tau. Used as "r * tau" in the pruning test so that
// an agent's own r candidates, each >= tau, always sum to at least this value
// in floating point.
double RTimesTau(int r, double tau);

// Candidate sets after pruning: agents in ascending order, then every other
// agent in ascending order, removing the candidate the other agent values
// most (lowest item on ties) while sum_top_r of its values exceeds r * tau.
// Appends to `log` when non-null.
std::vector<std::vector<int>> PruneCandidates(const Instance& inst, int r,
                                              double tau, RemovalLog* log);

struct RemovalOutcome {
  std::optional<Allocation> allocation;
  RemovalLog log;
};

// Threshold matching on the pruned graph. Any returned allocation is balanced
// and envy-free; this is re-checked and a violation raises InternalError.
// Throws InvalidArgument if m != r * n, r < 2 or tau is outside (0, 1).
RemovalOutcome ThresholdMatchingWithRemoval(const Instance& inst, int r, double tau);

struct CertificateDetail {
  RemovalEntry entry;
  // u_agent(item) >= tau, i.e. the edge existed before pruning.
  bool edge_in_threshold_graph = false;
  // Agent i' != agent whose strict tau' neighborhood shares more than 2r/3
  // items with the agent's, including the removed item. The logged trigger
  // is tried first.
  std::optional<int> witness;
  // Size for the witness, else the largest size seen among candidates.
  int intersection_size = 0;
  bool certified = false;
};

struct CertificateReport {
  double tau_prime = 0.0;
  // tau' <= 0: every item then clears the strict u > tau' test.
  bool degenerate_tau_prime = false;
  bool all_certified = true;
  std::vector<CertificateDetail> details;
};

CertificateReport VerifyRemovalCertificates(const Instance& inst, double tau, int r,
                                            const RemovalLog& log);

inline constexpr std::uint64_t kDefaultBruteForceCap = 10'000'000;

struct BruteForceResult {
  bool exists = false;
  std::uint64_t count = 0;
  // First envy-free allocation in enumeration order (item 0 varies fastest).
  std::optional<Allocation> witness;
};

// Enumerates all n^m allocations. With stop_at_first, returns after the
// first envy-free one (count is then 0 or 1). Throws CapExceeded if
// n^m > cap.
BruteForceResult BruteForceEfExists(const Instance& inst,
                                    std::uint64_t cap = kDefaultBruteForceCap,
                                    bool stop_at_first = false);

// n^m, saturating at UINT64_MAX.
std::uint64_t AllocationCount(int n, int m);

}  // namespace envyfree

#endif  // ENVYFREE_ALLOCATORS_H_
