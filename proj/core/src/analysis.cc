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

#include "envyfree/analysis.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "envyfree/errors.h"

namespace envyfree {

double TauPrime(double tau) { return 3.0 * tau - 2.0; }

double BigC(double q, double theta_upper, double theta_lower) {
  if (!(q > 0.0 && theta_upper > 0.0 && theta_lower > 0.0)) {
    throw InvalidArgument("big C: inputs must be positive");
  }
  return std::pow(3.0, q) * 64.0 * theta_upper / theta_lower;
}

double ConstantTau(double c, std::int64_t n, std::int64_t m,
                   const PolyBoundParams& params) {
  params.Validate();
  if (!(c > 0.0)) throw InvalidArgument("tau constant c must be positive");
  if (n < 1 || m < 1) throw InvalidArgument("tau: n and m must be >= 1");
  const double base = c * std::log(static_cast<double>(m)) /
                      (params.theta_lower * static_cast<double>(n));
  return 1.0 - std::pow(base, 1.0 / params.q);
}

double PopulationQuantileTau(const DistributionSpec& dist, std::int64_t n,
                             std::int64_t m, double kappa) {
  if (n < 1 || m < 1) throw InvalidArgument("tau: n and m must be >= 1");
  if (!(kappa > 0.0)) throw InvalidArgument("tau: kappa must be positive");
  const double target = kappa * std::log(static_cast<double>(m)) / static_cast<double>(n);
  if (!(target > 0.0 && target < 1.0)) {
    throw InvalidArgument("tau: kappa * log m / n = " + std::to_string(target) +
                          " is not a probability in (0,1)");
  }
  // Pr[u >= tau] ~ TailProb(1 - tau); find the smallest alpha whose tail
  // reaches the target.
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (dist.TailProb(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 1.0 - hi;
}

double LogRho(double theta, double q, std::int64_t r) {
  if (!(theta > 0.0)) throw InvalidArgument("rho: theta must be positive");
  if (theta > 1.0) throw InvalidArgument("rho: theta must be <= 1");
  if (!(q >= 1.0)) throw InvalidArgument("rho: q must be >= 1");
  if (r < 1) throw InvalidArgument("rho: r must be >= 1");
  const double rp1 = static_cast<double>(r) + 1.0;
  // x = (theta * (r+1)^-q)^(r+1), formed in log space.
  const double log_x = rp1 * (std::log(theta) - q * std::log(rp1));
  const double x = std::exp(log_x);
  return 0.25 * std::log1p(-x);
}

double Rho(double theta, double q, std::int64_t r) {
  return std::exp(LogRho(theta, q, r));
}

void NonExistenceBoundParams::Validate() const {
  if (n < 2) throw InvalidArgument("non-existence bound: n must be >= 2");
  if (r < 1) throw InvalidArgument("non-existence bound: r must be >= 1");
  const std::int64_t l = ell();
  if (l < 1 || l > n - 1) {
    throw InvalidArgument("non-existence bound: need r*n + 1 <= m <= (r+1)*n - 1 (ell = " +
                          std::to_string(l) + ")");
  }
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw InvalidArgument("non-existence bound: theta must lie in (0,1]");
  }
  if (!(q >= 1.0)) throw InvalidArgument("non-existence bound: q must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("non-existence bound: epsilon must lie in (0,1)");
  }
}

PerAllocationBound PerAllocationEfBound(const NonExistenceBoundParams& p) {
  p.Validate();
  const double n = static_cast<double>(p.n);
  const double l = static_cast<double>(p.ell());
  const double rr = static_cast<double>(p.r) * (static_cast<double>(p.r) + 1.0);
  const double log_rho = LogRho(p.theta, p.q, p.r);

  PerAllocationBound bound;
  bound.exponent = l * (n - l) / rr;
  bound.log_bound = bound.exponent * log_rho;
  bound.log_min_form = n * std::min(l, n - l) / (2.0 * rr) * log_rho;
  bound.log_epsilon_form = std::pow(n, 1.0 + p.epsilon) / (2.0 * rr) * log_rho;
  const double n_eps = std::pow(n, p.epsilon);
  bound.ell_in_theorem_range = l >= n_eps && l <= n - n_eps;
  return bound;
}

GlobalBound GlobalNonexistenceBound(const NonExistenceBoundParams& p) {
  const PerAllocationBound per = PerAllocationEfBound(p);
  const double log_n = std::log(static_cast<double>(p.n));
  const double m = static_cast<double>(p.m);
  GlobalBound global;
  global.log_per_allocation = per.log_bound;
  global.log_bound = m * log_n + per.log_bound;
  global.log_target = -2.0 * m * log_n;
  global.satisfies_theorem = global.log_per_allocation <= global.log_target;
  return global;
}

double NonexistenceC(double epsilon, double theta, double q) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("nonexistence c: epsilon must lie in (0,1)");
  }
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw InvalidArgument("nonexistence c: theta must lie in (0,1]");
  }
  if (!(q >= 1.0)) throw InvalidArgument("nonexistence c: q must be >= 1");
  return 0.1 * epsilon * theta / q;
}

std::int64_t NonexistenceMaxR(std::int64_t n, double c) {
  if (n < 3) throw InvalidArgument("nonexistence r-range: n must be >= 3");
  if (!(c > 0.0)) throw InvalidArgument("nonexistence r-range: c must be positive");
  const double log_n = std::log(static_cast<double>(n));
  return static_cast<std::int64_t>(std::floor(c * log_n / std::log(log_n)));
}

double CouponThreshold(std::int64_t n) {
  if (n < 2) throw InvalidArgument("coupon threshold: n must be >= 2");
  const double x = static_cast<double>(n);
  return x * std::log(x);
}

}  // namespace envyfree
