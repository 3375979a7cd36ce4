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

#ifndef ENVYFREE_DISTRIBUTIONS_H_
#define ENVYFREE_DISTRIBUTIONS_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "envyfree/rng.h"

namespace envyfree {

// Parameters (theta_lower, theta_upper, q) such that
//   theta_lower * a^q <= Pr[u > 1 - a] <= theta_upper * a^q  for a in (0, 1].
struct PolyBoundParams {
  double theta_lower = 1.0;
  double theta_upper = 1.0;
  double q = 1.0;

  // Throws InvalidArgument unless all fields are positive and
  // theta_lower <= theta_upper.
  void Validate() const;
};

// Number of support points used for the staircase distribution. Point k
// (0-based) sits at 1 - 2^-(k+1) and the strict tail satisfies
// Pr[u > 1 - 2^-i] = 2^-(i*i) for 0 <= i < kStaircaseLevels.
inline constexpr int kStaircaseLevels = 40;

// A utility distribution supported on [0, 1]. Immutable once built; the
// factories validate their parameters and throw InvalidArgument.
class DistributionSpec {
 public:
  enum class Kind { kUniform, kTruncatedNormal, kStaircase, kTable };

  // (value, cumulative probability) pairs for the table kind.
  using TablePoint = std::pair<double, double>;

  static DistributionSpec Uniform();
  static DistributionSpec TruncatedNormal(double mu, double sigma);
  static DistributionSpec Staircase();
  static DistributionSpec Table(std::vector<TablePoint> points);

  Kind kind() const { return kind_; }
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  const std::vector<TablePoint>& points() const { return points_; }

  // Short label without commas, suitable for a CSV cell.
  std::string Label() const;

  // Maps one 64-bit draw to a utility in [0, 1]. Every kind consumes exactly
  // one draw per sample.
  double FromBits(std::uint64_t bits) const;

  // Pr[u > 1 - alpha]; alpha must lie in (0, 1].
  double TailProb(double alpha) const;

  // Density on [0, 1] for kinds that have one (uniform, truncated normal).
  double Density(double x) const;

  friend bool operator==(const DistributionSpec& a, const DistributionSpec& b);

 private:
  DistributionSpec() = default;

  double NormalQuantileInWindow(double p) const;

  Kind kind_ = Kind::kUniform;
  double mu_ = 0.0;
  double sigma_ = 1.0;
  std::vector<TablePoint> points_;

  // Truncated normal: standardized endpoints and normalizer. When
  // use_upper_tail_ is set, probabilities are carried as upper-tail masses
  // Q(z) = 1 - Phi(z) to avoid cancellation for windows far above the mean.
  double z_lo_ = 0.0;
  double z_hi_ = 0.0;
  double mass_lo_ = 0.0;
  double mass_hi_ = 0.0;
  double normalizer_ = 1.0;
  bool use_upper_tail_ = false;
};

double Sample(const DistributionSpec& spec, CounterStream& stream);

double TailProb(const DistributionSpec& spec, double alpha);

// Analytic polynomial-boundedness parameters with q = 1, from the minimum and
// maximum density on [0, 1]. Throws InvalidArgument for staircase and table
// kinds, which have no such bound available.
PolyBoundParams AnalyticPolyBound(const DistributionSpec& spec);

struct PolyBoundPoint {
  double alpha = 0.0;
  double tail = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
};

// Evaluates both sides of the bound at every grid point.
std::vector<PolyBoundPoint> VerifyPolyBound(const DistributionSpec& spec,
                                            const PolyBoundParams& params,
                                            std::span<const double> alpha_grid);

// {2^-k : k = 0..max_k}.
std::vector<double> DyadicGrid(int max_k);

}  // namespace envyfree

#endif  // ENVYFREE_DISTRIBUTIONS_H_
