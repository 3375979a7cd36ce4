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

#ifndef ENVYFREE_ANALYSIS_H_
#define ENVYFREE_ANALYSIS_H_

#include <cstdint>

#include "envyfree/distributions.h"

namespace envyfree {

// Closed-form constants and probability bounds for threshold allocation and
// the non-existence union bound. "log" is the natural logarithm throughout;
// probabilities that underflow a double are reported as logs.

// 3 * tau - 2; may be negative.
double TauPrime(double tau);

// 3^q * 64 * theta_upper / theta_lower. Throws InvalidArgument unless all
// inputs are positive.
double BigC(double q, double theta_upper, double theta_lower);

// 1 - (c * log m / (theta_lower * n))^(1/q). May be <= 0 at small n; callers
// decide whether that is an error.
double ConstantTau(double c, std::int64_t n, std::int64_t m,
                   const PolyBoundParams& params);

// The tau at which Pr[u >= tau] = kappa * log m / n under `dist`, found by
// bisection on the tail. Throws InvalidArgument if the target probability is
// outside (0, 1).
double PopulationQuantileTau(const DistributionSpec& dist, std::int64_t n,
                             std::int64_t m, double kappa);

// rho = (1 - (theta / (r+1)^q)^(r+1))^(1/4).
// Domain: theta in (0, 1], q >= 1, r >= 1; InvalidArgument otherwise.
double Rho(double theta, double q, std::int64_t r);
// log(rho), accurate even when rho rounds to 1.
double LogRho(double theta, double q, std::int64_t r);

struct NonExistenceBoundParams {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t r = 0;
  double theta = 1.0;
  double q = 1.0;
  double epsilon = 0.5;

  // m - r * n.
  std::int64_t ell() const { return m - r * n; }

  // Requires n >= 2, r >= 1, 1 <= ell <= n - 1, theta in (0, 1], q >= 1 and
  // epsilon in (0, 1).
  void Validate() const;
};

// Bounds on Pr[a fixed allocation is envy-free], as natural logs.
struct PerAllocationBound {
  // ell * (n - ell) / (r * (r + 1)).
  double exponent = 0.0;
  // exponent * log(rho): the tightest form.
  double log_bound = 0.0;
  // n * min(ell, n - ell) / (2 r (r + 1)) * log(rho).
  double log_min_form = 0.0;
  // n^(1 + epsilon) / (2 r (r + 1)) * log(rho). Only an upper bound on the
  // forms above when ell_in_theorem_range holds.
  double log_epsilon_form = 0.0;
  // n^epsilon <= ell <= n - n^epsilon.
  bool ell_in_theorem_range = false;
};

PerAllocationBound PerAllocationEfBound(const NonExistenceBoundParams& p);

struct GlobalBound {
  // log(n^m * per-allocation bound), the union bound over all allocations.
  double log_bound = 0.0;
  double log_per_allocation = 0.0;
  // log(n^(-2m)), the per-allocation target.
  double log_target = 0.0;
  // log_per_allocation <= log_target.
  bool satisfies_theorem = false;
};

GlobalBound GlobalNonexistenceBound(const NonExistenceBoundParams& p);

// c = 0.1 * epsilon * theta / q, for epsilon in (0,1), theta in (0,1], q >= 1.
double NonexistenceC(double epsilon, double theta, double q);

// floor(c * log n / log log n); requires n >= 3 so that log log n > 0.
std::int64_t NonexistenceMaxR(std::int64_t n, double c);

// n * log n; requires n >= 2.
double CouponThreshold(std::int64_t n);

}  // namespace envyfree

#endif  // ENVYFREE_ANALYSIS_H_
