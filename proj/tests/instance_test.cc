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

#include "envyfree/instance.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "envyfree/errors.h"
#include "gtest/gtest.h"
#include "testing/generators.h"

namespace envyfree {
namespace {

using testing::Gen;
using testing::MakeInstance;

TEST(GenerateInstanceTest, EmptyItemSet) {
  const Instance inst = GenerateInstance(1, 0, DistributionSpec::Uniform(), 99);
  EXPECT_EQ(inst.num_agents(), 1);
  EXPECT_EQ(inst.num_items(), 0);
  EXPECT_TRUE(inst.utilities().empty());
}

TEST(GenerateInstanceTest, Deterministic) {
  const auto a = GenerateInstance(2, 3, DistributionSpec::Uniform(), 5);
  const auto b = GenerateInstance(2, 3, DistributionSpec::Uniform(), 5);
  EXPECT_TRUE(std::equal(a.utilities().begin(), a.utilities().end(), b.utilities().begin(),
                         b.utilities().end()));
  const auto c = GenerateInstance(2, 3, DistributionSpec::Uniform(), 6);
  EXPECT_FALSE(std::equal(a.utilities().begin(), a.utilities().end(), c.utilities().begin()));
}

TEST(GenerateInstanceTest, EntryIsDrawRowMajor) {
  const auto dist = DistributionSpec::Uniform();
  const auto inst = GenerateInstance(3, 4, dist, 17);
  const CounterStream s(17, kUtilityStream);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(inst.utility(i, j), dist.FromBits(s.At(i * 4 + j)));
  }
}

TEST(GenerateInstanceTest, StaircaseEntriesInSupport) {
  std::set<double> support;
  for (int k = 0; k < kStaircaseLevels; ++k) support.insert(1.0 - std::ldexp(1.0, -(k + 1)));
  const auto inst = GenerateInstance(3, 5, DistributionSpec::Staircase(), 8);
  for (double u : inst.utilities()) EXPECT_TRUE(support.count(u)) << u;
}

TEST(InstanceTest, RejectsBadInput) {
  EXPECT_THROW(MakeInstance(2, 2, {0.1, 0.2, 0.3}), DimensionMismatch);
  EXPECT_THROW(MakeInstance(0, 0, {}), InvalidArgument);
  EXPECT_THROW(MakeInstance(1, 1, {1.5}), InvalidArgument);
  EXPECT_THROW(MakeInstance(1, 1, {-0.1}), InvalidArgument);
}

TEST(BundleUtilityTest, Examples) {
  const auto inst = MakeInstance(2, 2, {0.6, 0.1, 0.2, 0.7});
  EXPECT_EQ(BundleUtility(inst, 0, {}), 0.0);
  const int both[] = {0, 1};
  EXPECT_DOUBLE_EQ(BundleUtility(inst, 0, both), 0.7);
  const int one[] = {1};
  EXPECT_EQ(BundleUtility(inst, 1, one), 0.7);
  const int bad[] = {2};
  EXPECT_THROW(BundleUtility(inst, 0, bad), InvalidArgument);
}

TEST(EnvyTest, SingleAgentAlwaysEnvyFree) {
  const auto inst = MakeInstance(1, 3, {0.1, 0.5, 0.9});
  EXPECT_TRUE(IsEnvyFree(inst, MakeAllocation(1, {0, 0, 0})));
}

TEST(EnvyTest, OneItemTwoAgentsLeavesEnvy) {
  const auto inst = MakeInstance(2, 1, {0.4, 0.3});
  const EnvyReport report = CheckEnvy(inst, MakeAllocation(2, {0}));
  EXPECT_FALSE(report.envy_free);
  ASSERT_TRUE(report.witness.has_value());
  EXPECT_EQ(report.witness->envious, 1);
  EXPECT_EQ(report.witness->envied, 0);
  EXPECT_EQ(report.witness->deficit, 0.3);
  EXPECT_EQ(report.max_envy, (std::vector<double>{0.0, 0.3}));
}

TEST(EnvyTest, DiagonalExampleIsEnvyFree) {
  const auto inst = MakeInstance(2, 2, {0.6, 0.1, 0.2, 0.7});
  const EnvyReport report = CheckEnvy(inst, MakeAllocation(2, {0, 1}));
  EXPECT_TRUE(report.envy_free);
  EXPECT_FALSE(report.witness.has_value());
}

TEST(EnvyTest, DimensionMismatchThrows) {
  const auto inst = MakeInstance(2, 2, {0.6, 0.1, 0.2, 0.7});
  EXPECT_THROW(CheckEnvy(inst, MakeAllocation(2, {0})), DimensionMismatch);
  EXPECT_THROW(CheckEnvy(inst, MakeAllocation(3, {0, 1})), DimensionMismatch);
  EXPECT_THROW(MakeAllocation(2, {0, 2}), InvalidArgument);
}

TEST(BalanceTest, Examples) {
  EXPECT_TRUE(IsBalanced(MakeAllocation(2, {0, 0, 1, 1}), 2));
  EXPECT_FALSE(IsBalanced(MakeAllocation(2, {0, 0, 0, 1}), 2));
  // m != r * n can never be balanced.
  Gen gen(1);
  for (int t = 0; t < 200; ++t) {
    const int n = gen.Int(1, 4);
    const int m = gen.Int(0, 9);
    std::vector<int> owner(m);
    for (int& o : owner) o = gen.Int(0, n - 1);
    const auto alloc = MakeAllocation(n, owner);
    for (int r = 0; r <= 4; ++r) {
      if (m != r * n) {
        EXPECT_FALSE(IsBalanced(alloc, r));
      }
    }
  }
}

TEST(SumTopRTest, Examples) {
  const double a[] = {0.9, 0.8, 0.1};
  EXPECT_DOUBLE_EQ(SumTopR(a, 2), 1.7);
  const double b[] = {0.5};
  EXPECT_EQ(SumTopR(b, 2), 0.5);
  EXPECT_EQ(SumTopR(std::span<const double>(), 3), 0.0);
}

TEST(SumTopRTest, MonotoneInRAndSaturates) {
  Gen gen(2);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> v(gen.Int(0, 12));
    for (double& x : v) x = gen.Unit();
    double prev = 0.0;
    for (int r = 0; r <= 14; ++r) {
      const double s = SumTopR(v, r);
      EXPECT_GE(s, prev);
      prev = s;
      if (r >= static_cast<int>(v.size())) {
        EXPECT_EQ(s, CanonicalSum(v));
      }
    }
  }
}

TEST(CanonicalSumTest, IndependentOfOrder) {
  Gen gen(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(gen.Int(0, 20));
    for (double& x : v) x = gen.Unit();
    const double reference = CanonicalSum(v);
    std::reverse(v.begin(), v.end());
    EXPECT_EQ(CanonicalSum(v), reference);
    std::vector<double> copy = v;
    EXPECT_EQ(CanonicalSumInPlace(copy), reference);
  }
}

TEST(EnvyPropertyTest, BundlesPartitionItems) {
  Gen gen(4);
  for (int t = 0; t < 300; ++t) {
    const int n = gen.Int(1, 6);
    const int m = gen.Int(0, 15);
    std::vector<int> owner(m);
    for (int& o : owner) o = gen.Int(0, n - 1);
    const auto alloc = MakeAllocation(n, owner);
    const auto sizes = alloc.BundleSizes();
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), 0), m);
    std::vector<int> seen;
    for (const auto& b : alloc.Bundles()) seen.insert(seen.end(), b.begin(), b.end());
    std::sort(seen.begin(), seen.end());
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(seen, all);
  }
}

TEST(EnvyPropertyTest, EnvyFreeIffOwnBundleIsBest) {
  Gen gen(5);
  for (int t = 0; t < 1000; ++t) {
    const int n = gen.Int(1, 4);
    const int m = gen.Int(0, 8);
    const auto inst = gen.TiedInstance(n, m, 4);
    std::vector<int> owner(m);
    for (int& o : owner) o = gen.Int(0, n - 1);
    const auto alloc = MakeAllocation(n, owner);
    const auto bundles = alloc.Bundles();
    bool expected = true;
    for (int i = 0; i < n; ++i) {
      double best = 0.0;
      for (const auto& b : bundles) best = std::max(best, BundleUtility(inst, i, b));
      expected = expected && BundleUtility(inst, i, bundles[i]) == best;
    }
    EXPECT_EQ(IsEnvyFree(inst, alloc), expected);
  }
}

TEST(EnvyPropertyTest, InvariantUnderPowerOfTwoRowRescaling) {
  Gen gen(6);
  for (int t = 0; t < 1000; ++t) {
    const int n = gen.Int(2, 4);
    const int m = gen.Int(1, 8);
    const auto inst = gen.RandomInstance(n, m, DistributionSpec::Uniform());
    std::vector<int> owner(m);
    for (int& o : owner) o = gen.Int(0, n - 1);
    const auto alloc = MakeAllocation(n, owner);
    std::vector<double> scaled(inst.utilities().begin(), inst.utilities().end());
    const int row = gen.Int(0, n - 1);
    const double factor = std::ldexp(1.0, -gen.Int(1, 8));
    for (int j = 0; j < m; ++j) scaled[row * m + j] *= factor;
    const Instance rescaled(n, m, scaled, 0, DistributionSpec::Uniform());
    EXPECT_EQ(IsEnvyFree(inst, alloc), IsEnvyFree(rescaled, alloc));
  }
}

}  // namespace
}  // namespace envyfree
