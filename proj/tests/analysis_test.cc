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

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "envyfree/errors.h"
#include "gtest/gtest.h"

namespace envyfree {
namespace {

using Big = boost::multiprecision::cpp_dec_float_50;

Big RefLogRho(double theta, double q, std::int64_t r) {
  const Big base = Big(theta) / pow(Big(r + 1), Big(q));
  return log(1 - pow(base, Big(r + 1))) / 4;
}

Big RefPerAllocationLog(const NonExistenceBoundParams& p) {
  const Big ell = Big(p.ell());
  return ell * (Big(p.n) - ell) / (Big(p.r) * Big(p.r + 1)) * RefLogRho(p.theta, p.q, p.r);
}

Big RefGlobalLog(const NonExistenceBoundParams& p) {
  return Big(p.m) * log(Big(p.n)) + RefPerAllocationLog(p);
}

double RelErr(double got, const Big& want) {
  return static_cast<double>(abs((Big(got) - want) / want));
}

NonExistenceBoundParams Params(std::int64_t n, std::int64_t m, double theta = 1, double q = 1,
                               double eps = 0.5) {
  NonExistenceBoundParams p;
  p.n = n;
  p.m = m;
  p.r = m / n;
  p.theta = theta;
  p.q = q;
  p.epsilon = eps;
  return p;
}

TEST(TauPrimeTest, Examples) {
  EXPECT_EQ(TauPrime(1.0), 1.0);
  EXPECT_NEAR(TauPrime(2.0 / 3), 0.0, 1e-15);
  EXPECT_NEAR(TauPrime(0.9), 0.7, 1e-15);
}

TEST(BigCTest, Examples) {
  EXPECT_EQ(BigC(1, 1, 1), 192.0);
  EXPECT_EQ(BigC(2, 2, 1), 1152.0);
  for (double theta : {0.01, 0.5, 3.0}) EXPECT_DOUBLE_EQ(BigC(1.5, theta, theta), BigC(1.5, 1, 1));
  EXPECT_THROW(BigC(1, 0, 1), InvalidArgument);
}

TEST(ConstantTauTest, Examples) {
  const PolyBoundParams uniform{1, 1, 1};
  EXPECT_NEAR(ConstantTau(64, 1000000, 2000000, uniform), 0.99907144590473444996, 1e-15);
  EXPECT_NEAR(ConstantTau(2, 1000, 2000, uniform), 0.98479819508091583528, 1e-15);
  EXPECT_NEAR(ConstantTau(64, 1000, 2000, uniform), 0.51354224258930672887, 1e-15);
  EXPECT_NEAR(ConstantTau(64, 200, 400, uniform), 1 - 1.9172686550745542, 1e-14);
}

TEST(PopulationQuantileTauTest, Uniform) {
  EXPECT_NEAR(PopulationQuantileTau(DistributionSpec::Uniform(), 100, 150, 2.0),
              1 - 2 * std::log(150.0) / 100, 1e-12);
  EXPECT_THROW(PopulationQuantileTau(DistributionSpec::Uniform(), 2, 4, 2.0), InvalidArgument);
}

TEST(RhoTest, ClosedForms) {
  EXPECT_NEAR(Rho(1, 1, 1), 0.93060485910209959894121874698, 1e-15);
  EXPECT_NEAR(Rho(1, 1, 2), 0.99060928873361384264439456645, 1e-15);
  EXPECT_NEAR(Rho(1, 1, 1) / std::pow(0.75, 0.25), 1.0, 1e-15);
}

TEST(RhoTest, Domain) {
  EXPECT_THROW(Rho(1, 1, 0), InvalidArgument);
  EXPECT_THROW(Rho(0, 1, 1), InvalidArgument);
  EXPECT_THROW(Rho(1.5, 1, 1), InvalidArgument);
  EXPECT_THROW(Rho(1, 0.5, 1), InvalidArgument);
}

TEST(RhoTest, MonotoneOnGrid) {
  const double thetas[] = {0.1, 0.3, 0.6, 1.0};
  const double qs[] = {1.0, 1.5, 2.0, 3.0};
  for (double theta : thetas) {
    for (double q : qs) {
      for (std::int64_t r = 1; r < 6; ++r) {
        EXPECT_LT(LogRho(theta, q, r), LogRho(theta, q, r + 1));
        EXPECT_LT(LogRho(theta, q, r), LogRho(theta, q + 0.5, r));
        if (theta < 1.0) {
          EXPECT_GT(LogRho(theta, q, r), LogRho(theta + 0.05, q, r));
        }
      }
    }
  }
}

TEST(RhoTest, LargeQApproachesOneFromBelow) {
  double prev = Rho(1, 1, 1);
  for (double q = 2; q <= 40; q += 2) {
    const double rho = Rho(1, q, 1);
    EXPECT_GE(rho, prev);
    EXPECT_LE(rho, 1.0);
    prev = rho;
  }
  EXPECT_LT(LogRho(1, 60, 1), 0.0);
  EXPECT_NEAR(prev, 1.0, 1e-9);
}

TEST(PerAllocationBoundTest, HalfSplit) {
  const PerAllocationBound b = PerAllocationEfBound(Params(100, 150));
  EXPECT_EQ(b.exponent, 1250.0);
  EXPECT_NEAR(b.log_bound, -89.900647641181539825, 1e-12);
  EXPECT_TRUE(b.ell_in_theorem_range);
  EXPECT_LE(b.log_bound, b.log_epsilon_form);
}

TEST(PerAllocationBoundTest, DivisibleRejected) {
  EXPECT_THROW(PerAllocationEfBound(Params(100, 200)), InvalidArgument);
}

TEST(PerAllocationBoundTest, SymmetricAndMinimizedAtHalf) {
  for (std::int64_t n : {5, 10, 17, 40}) {
    for (std::int64_t r : {1, 2, 3}) {
      double best = 0.0;
      std::int64_t argbest = 0;
      for (std::int64_t ell = 1; ell < n; ++ell) {
        const double a = PerAllocationEfBound(Params(n, r * n + ell)).log_bound;
        const double b = PerAllocationEfBound(Params(n, r * n + n - ell)).log_bound;
        EXPECT_EQ(a, b) << n << " " << r << " " << ell;
        if (a < best) {
          best = a;
          argbest = ell;
        }
      }
      EXPECT_EQ(argbest, n / 2);
    }
  }
}

TEST(GlobalBoundTest, HundredByHundredFifty) {
  const GlobalBound g = GlobalNonexistenceBound(Params(100, 150));
  EXPECT_NEAR(g.log_bound, 600.87488025703216538, 1e-9);
  EXPECT_NEAR(g.log_target, -1381.5510557964274104, 1e-9);
  EXPECT_FALSE(g.satisfies_theorem);
}

TEST(GlobalBoundTest, TargetImpliesUnionBound) {
  for (std::int64_t n = 10; n <= 2000; n = n * 3 / 2) {
    for (double theta : {1.0, 0.5}) {
      const auto p = Params(n, n + n / 2, theta);
      const GlobalBound g = GlobalNonexistenceBound(p);
      if (g.satisfies_theorem) {
        EXPECT_LE(g.log_bound, -p.m * std::log(double(p.n)) + 1e-9);
      }
    }
  }
}

TEST(GlobalBoundTest, DecreasesWithProportionalGrowth) {
  // The n^m factor dominates at small n; the grid starts past that regime.
  double prev = INFINITY;
  for (std::int64_t n = 1000; n <= 256000; n *= 2) {
    const double log_bound = GlobalNonexistenceBound(Params(n, n + n / 2)).log_bound;
    EXPECT_LT(log_bound, prev) << n;
    prev = log_bound;
  }
}

TEST(BoundReferenceTest, MatchesFiftyDigitEvaluation) {
  for (std::int64_t n : {3, 10, 100, 1000, 100000}) {
    for (std::int64_t r : {1, 2, 5}) {
      for (double theta : {0.2, 1.0}) {
        for (double q : {1.0, 2.5}) {
          for (std::int64_t ell : {std::int64_t{1}, n / 2, n - 1}) {
            const auto p = Params(n, r * n + ell, theta, q);
            EXPECT_LT(RelErr(LogRho(theta, q, r), RefLogRho(theta, q, r)), 1e-12);
            EXPECT_LT(RelErr(PerAllocationEfBound(p).log_bound, RefPerAllocationLog(p)), 1e-10);
            EXPECT_LT(RelErr(GlobalNonexistenceBound(p).log_bound, RefGlobalLog(p)), 1e-10);
          }
        }
      }
    }
  }
}

TEST(TauPrimeTest, BelowTauBelowOne) {
  for (int k = 1; k < 1000; ++k) EXPECT_LT(TauPrime(k / 1000.0), k / 1000.0);
}

TEST(NonexistenceRangeTest, Constants) {
  EXPECT_DOUBLE_EQ(NonexistenceC(0.5, 1, 1), 0.05);
  EXPECT_NEAR(NonexistenceC(1 - 1e-12, 1, 1), 0.1, 1e-12);
  EXPECT_EQ(NonexistenceMaxR(1000000, 0.05), 0);
  EXPECT_THROW(NonexistenceC(1.0, 1, 1), InvalidArgument);
  EXPECT_THROW(NonexistenceMaxR(2, 0.05), InvalidArgument);
}

TEST(CouponThresholdTest, Examples) {
  EXPECT_NEAR(CouponThreshold(100), 460.51701859880913680, 1e-12);
  EXPECT_NEAR(CouponThreshold(2), 1.3862943611198906188, 1e-15);
  for (std::int64_t n = 2; n < 500; ++n) EXPECT_LT(CouponThreshold(n), CouponThreshold(n + 1));
  EXPECT_THROW(CouponThreshold(1), InvalidArgument);
}

}  // namespace
}  // namespace envyfree
