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

#include "envyfree/distributions.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>

#include "envyfree/errors.h"

namespace envyfree {
namespace {

using StdNormal = boost::math::normal_distribution<double>;

double Phi(double z) { return boost::math::cdf(StdNormal(), z); }
double Q(double z) {
  return boost::math::cdf(boost::math::complement(StdNormal(), z));
}
double StdDensity(double z) { return boost::math::pdf(StdNormal(), z); }

// Staircase support point k, 0 <= k < kStaircaseLevels.
double StaircaseValue(int k) { return 1.0 - std::ldexp(1.0, -(k + 1)); }

}  // namespace

void PolyBoundParams::Validate() const {
  if (!(theta_lower > 0.0) || !(theta_upper > 0.0) || !(q > 0.0)) {
    throw InvalidArgument("poly-bound parameters must be positive");
  }
  if (theta_lower > theta_upper) {
    throw InvalidArgument("theta_lower exceeds theta_upper");
  }
}

DistributionSpec DistributionSpec::Uniform() {
  DistributionSpec spec;
  spec.kind_ = Kind::kUniform;
  return spec;
}

DistributionSpec DistributionSpec::TruncatedNormal(double mu, double sigma) {
  if (!std::isfinite(mu)) throw InvalidArgument("truncated normal: mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("truncated normal: sigma must be positive");
  }
  DistributionSpec spec;
  spec.kind_ = Kind::kTruncatedNormal;
  spec.mu_ = mu;
  spec.sigma_ = sigma;
  spec.z_lo_ = (0.0 - mu) / sigma;
  spec.z_hi_ = (1.0 - mu) / sigma;
  // Work on whichever side of the mean keeps the window's masses small.
  spec.use_upper_tail_ = spec.z_lo_ + spec.z_hi_ > 0.0;
  if (spec.use_upper_tail_) {
    spec.mass_lo_ = Q(spec.z_lo_);
    spec.mass_hi_ = Q(spec.z_hi_);
    spec.normalizer_ = spec.mass_lo_ - spec.mass_hi_;
  } else {
    spec.mass_lo_ = Phi(spec.z_lo_);
    spec.mass_hi_ = Phi(spec.z_hi_);
    spec.normalizer_ = spec.mass_hi_ - spec.mass_lo_;
  }
  if (!(spec.normalizer_ > std::numeric_limits<double>::min())) {
    throw InvalidArgument(
        "truncated normal: [0,1] carries no representable probability mass");
  }
  return spec;
}

DistributionSpec DistributionSpec::Staircase() {
  DistributionSpec spec;
  spec.kind_ = Kind::kStaircase;
  return spec;
}

DistributionSpec DistributionSpec::Table(std::vector<TablePoint> points) {
  if (points.empty()) throw InvalidArgument("table: no points");
  double prev_value = -std::numeric_limits<double>::infinity();
  double prev_cum = 0.0;
  for (const auto& [value, cum] : points) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw InvalidArgument("table: values must lie in [0,1]");
    }
    if (!(value > prev_value)) {
      throw InvalidArgument("table: values must be strictly increasing");
    }
    if (!(cum >= prev_cum && cum <= 1.0)) {
      throw InvalidArgument(
          "table: cumulative probabilities must be nondecreasing in [0,1]");
    }
    prev_value = value;
    prev_cum = cum;
  }
  if (points.back().second != 1.0) {
    throw InvalidArgument("table: cumulative probabilities must end at 1");
  }
  DistributionSpec spec;
  spec.kind_ = Kind::kTable;
  spec.points_ = std::move(points);
  return spec;
}

std::string DistributionSpec::Label() const {
  auto shortest = [](double x) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof(buf), x).ptr);
  };
  switch (kind_) {
    case Kind::kUniform:
      return "uniform";
    case Kind::kTruncatedNormal:
      return "truncated_normal:" + shortest(mu_) + ":" + shortest(sigma_);
    case Kind::kStaircase:
      return "staircase";
    case Kind::kTable:
      return "table:" + std::to_string(points_.size());
  }
  return "unknown";
}

double DistributionSpec::NormalQuantileInWindow(double p) const {
  // p is a probability in the representation chosen at construction.
  if (use_upper_tail_) {
    if (p >= mass_lo_) return 0.0;
    if (p <= mass_hi_ || p <= 0.0) return 1.0;
    const double z = boost::math::quantile(boost::math::complement(StdNormal(), p));
    return std::clamp(mu_ + sigma_ * z, 0.0, 1.0);
  }
  if (p <= mass_lo_ || p <= 0.0) return 0.0;
  if (p >= mass_hi_ || p >= 1.0) return 1.0;
  const double z = boost::math::quantile(StdNormal(), p);
  return std::clamp(mu_ + sigma_ * z, 0.0, 1.0);
}

double DistributionSpec::FromBits(std::uint64_t bits) const {
  const double unit = ToUnitInterval(bits);
  switch (kind_) {
    case Kind::kUniform:
      return unit;
    case Kind::kTruncatedNormal:
      if (use_upper_tail_) {
        return NormalQuantileInWindow(mass_lo_ - unit * normalizer_);
      }
      return NormalQuantileInWindow(mass_lo_ + unit * normalizer_);
    case Kind::kStaircase: {
      // s is uniform on the grid {2^-53, ..., 1}; level k is chosen with
      // Pr[k >= i] = Pr[s <= 2^-(i*i)] = 2^-(i*i) exactly while i*i <= 53.
      const double s = 1.0 - unit;
      int k = 0;
      while (k + 1 < kStaircaseLevels &&
             std::ldexp(1.0, -(k + 1) * (k + 1)) >= s) {
        ++k;
      }
      return StaircaseValue(k);
    }
    case Kind::kTable: {
      for (const auto& [value, cum] : points_) {
        if (unit < cum) return value;
      }
      return points_.back().first;
    }
  }
  return unit;
}

double DistributionSpec::TailProb(double alpha) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("tail_prob: alpha must lie in (0,1]");
  }
  const double x = 1.0 - alpha;
  switch (kind_) {
    case Kind::kUniform:
      return alpha;
    case Kind::kTruncatedNormal: {
      if (x <= 0.0) return 1.0;
      const double z = (x - mu_) / sigma_;
      // Upper-tail mass of the window above x, computed without subtracting
      // from 1.
      const double above = use_upper_tail_ ? Q(z) - mass_hi_ : mass_hi_ - Phi(z);
      return std::clamp(above / normalizer_, 0.0, 1.0);
    }
    case Kind::kStaircase: {
      // Point k lies above x iff 2^-(k+1) < alpha; the mass at and above the
      // first such level telescopes to 2^-(k*k).
      for (int k = 0; k < kStaircaseLevels; ++k) {
        if (std::ldexp(1.0, -(k + 1)) < alpha) return std::ldexp(1.0, -k * k);
      }
      return 0.0;
    }
    case Kind::kTable: {
      double cdf = 0.0;
      for (const auto& [value, cum] : points_) {
        if (value <= x) cdf = cum;
      }
      return 1.0 - cdf;
    }
  }
  return 0.0;
}

double DistributionSpec::Density(double x) const {
  switch (kind_) {
    case Kind::kUniform:
      return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
    case Kind::kTruncatedNormal:
      if (x < 0.0 || x > 1.0) return 0.0;
      return StdDensity((x - mu_) / sigma_) / (sigma_ * normalizer_);
    case Kind::kStaircase:
    case Kind::kTable:
      break;
  }
  throw InvalidArgument("density: " + Label() + " has no density");
}

bool operator==(const DistributionSpec& a, const DistributionSpec& b) {
  return a.kind_ == b.kind_ && a.mu_ == b.mu_ && a.sigma_ == b.sigma_ &&
         a.points_ == b.points_;
}

double Sample(const DistributionSpec& spec, CounterStream& stream) {
  return spec.FromBits(stream.Next());
}

double TailProb(const DistributionSpec& spec, double alpha) {
  return spec.TailProb(alpha);
}

PolyBoundParams AnalyticPolyBound(const DistributionSpec& spec) {
  switch (spec.kind()) {
    case DistributionSpec::Kind::kUniform:
      return {1.0, 1.0, 1.0};
    case DistributionSpec::Kind::kTruncatedNormal: {
      // The density is unimodal with its peak at mu, so its extremes on
      // [0,1] sit at the endpoints and at mu clamped into the interval.
      const double at0 = spec.Density(0.0);
      const double at1 = spec.Density(1.0);
      const double peak = spec.Density(std::clamp(spec.mu(), 0.0, 1.0));
      return {std::min(at0, at1), std::max({at0, at1, peak}), 1.0};
    }
    case DistributionSpec::Kind::kStaircase:
    case DistributionSpec::Kind::kTable:
      break;
  }
  throw InvalidArgument("no analytic polynomial bound available for " +
                        spec.Label());
}

std::vector<PolyBoundPoint> VerifyPolyBound(const DistributionSpec& spec,
                                            const PolyBoundParams& params,
                                            std::span<const double> alpha_grid) {
  params.Validate();
  std::vector<PolyBoundPoint> report;
  report.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    const double tail = spec.TailProb(alpha);
    const double scale = std::pow(alpha, params.q);
    report.push_back({alpha, tail, tail >= params.theta_lower * scale,
                      tail <= params.theta_upper * scale});
  }
  return report;
}

std::vector<double> DyadicGrid(int max_k) {
  if (max_k < 0) throw InvalidArgument("dyadic grid: max_k must be >= 0");
  std::vector<double> grid;
  for (int k = 0; k <= max_k; ++k) grid.push_back(std::ldexp(1.0, -k));
  return grid;
}

}  // namespace envyfree
