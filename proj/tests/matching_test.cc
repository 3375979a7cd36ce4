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

#include "envyfree/matching.h"

#include <functional>
#include <vector>

#include "envyfree/errors.h"
#include "gtest/gtest.h"
#include "testing/generators.h"

namespace envyfree {
namespace {

using testing::Gen;

BipartiteGraph Complete(int left, int right) {
  std::vector<std::vector<int>> adj(left);
  for (auto& row : adj) {
    for (int w = 0; w < right; ++w) row.push_back(w);
  }
  return BipartiteGraph(left, right, adj);
}

// Backtracking over right vertices; each one must go to a neighbor with spare
// capacity. Independent of the library's matcher and Hall scan.
bool HasPerfectRMatchingByBacktracking(const BipartiteGraph& g, int r) {
  if (g.right_count() != r * g.left_count()) return false;
  std::vector<std::vector<int>> owners(g.right_count());
  for (int v = 0; v < g.left_count(); ++v) {
    for (int w : g.neighbors(v)) owners[w].push_back(v);
  }
  std::vector<int> load(g.left_count(), 0);
  std::function<bool(int)> place = [&](int w) {
    if (w == g.right_count()) return true;
    for (int v : owners[w]) {
      if (load[v] == r) continue;
      ++load[v];
      if (place(w + 1)) return true;
      --load[v];
    }
    return false;
  };
  return place(0);
}

TEST(BipartiteGraphTest, SortsAndValidates) {
  const BipartiteGraph g(2, 3, {{2, 0}, {1}});
  EXPECT_EQ(g.DebugString(), "0: 0 2\n1: 1\n");
  EXPECT_TRUE(g.HasEdge(0, 2));
  EXPECT_FALSE(g.HasEdge(1, 0));
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_THROW(BipartiteGraph(2, 3, {{0, 0}, {}}), InvalidArgument);
  EXPECT_THROW(BipartiteGraph(2, 3, {{3}, {}}), InvalidArgument);
  EXPECT_THROW(BipartiteGraph(2, 3, {{0}}), DimensionMismatch);
}

TEST(FindPerfectRMatchingTest, CompleteTwoByFour) {
  const auto g = Complete(2, 4);
  const auto m = FindPerfectRMatching(g, 2);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(ValidateRMatching(g, *m, 2));
  EXPECT_FALSE(FindHallViolation(g, 2).has_value());
}

TEST(FindPerfectRMatchingTest, UncoverableItem) {
  const BipartiteGraph g(2, 4, {{0, 1, 2}, {0, 1, 2}});
  EXPECT_FALSE(FindPerfectRMatching(g, 2).has_value());
}

TEST(FindPerfectRMatchingTest, SharedNeighborhoodViolatesHall) {
  const BipartiteGraph g(2, 4, {{0, 1}, {0, 1}});
  EXPECT_FALSE(FindPerfectRMatching(g, 2).has_value());
  const auto s = FindHallViolation(g, 2);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(*s, (std::vector<int>{0, 1}));
}

TEST(FindPerfectRMatchingTest, RejectsBadShapes) {
  EXPECT_THROW(FindPerfectRMatching(Complete(2, 5), 2), DimensionMismatch);
  EXPECT_THROW(FindPerfectRMatching(Complete(2, 0), 0), InvalidArgument);
}

TEST(FindPerfectRMatchingTest, EmptyGraph) {
  const BipartiteGraph g(0, 0, {});
  const auto m = FindPerfectRMatching(g, 3);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(m->assignment.empty());
}

TEST(FindHallViolationTest, SingleAgentWithExactlyRNeighbors) {
  for (int r = 1; r <= 5; ++r) {
    EXPECT_FALSE(FindHallViolation(Complete(1, r), r).has_value()) << r;
  }
}

TEST(FindHallViolationTest, RejectsLargeLeftSide) {
  EXPECT_THROW(FindHallViolation(Complete(kMaxHallLeftCount + 1, kMaxHallLeftCount + 1), 1),
               InvalidArgument);
}

TEST(ValidateRMatchingTest, RejectsReusedItemAndMissingEdge) {
  const BipartiteGraph g(2, 4, {{0, 1, 2}, {1, 2, 3}});
  EXPECT_TRUE(ValidateRMatching(g, {{{0, 1}, {2, 3}}}, 2));
  EXPECT_FALSE(ValidateRMatching(g, {{{0, 1}, {1, 3}}}, 2));
  EXPECT_FALSE(ValidateRMatching(g, {{{0, 3}, {1, 2}}}, 2));
  EXPECT_FALSE(ValidateRMatching(g, {{{0}, {1, 2, 3}}}, 2));
  EXPECT_FALSE(ValidateRMatching(g, {{{0, 1}}}, 2));
}

TEST(MatchingPropertyTest, SolverAgreesWithHallScan) {
  Gen gen(10);
  const std::vector<double> densities = {0.2, 0.5, 0.8};
  for (int t = 0; t < 3000; ++t) {
    const int left = gen.Int(1, 6);
    const int r = gen.Int(1, 3);
    if (left * r > 12) continue;
    const auto g = gen.Graph(left, left * r, gen.Pick(densities));
    const auto m = FindPerfectRMatching(g, r);
    EXPECT_EQ(m.has_value(), !FindHallViolation(g, r).has_value()) << g.DebugString();
    if (m) {
      EXPECT_TRUE(ValidateRMatching(g, *m, r));
    }
  }
}

TEST(MatchingPropertyTest, SolverAgreesWithBacktracking) {
  Gen gen(11);
  for (int t = 0; t < 3000; ++t) {
    const int left = gen.Int(1, 4);
    const int r = gen.Int(1, 3);
    const auto g = gen.Graph(left, left * r, 0.3 + 0.6 * gen.Unit());
    EXPECT_EQ(FindPerfectRMatching(g, r).has_value(), HasPerfectRMatchingByBacktracking(g, r))
        << g.DebugString();
  }
}

TEST(MatchingPropertyTest, Deterministic) {
  Gen gen(12);
  for (int t = 0; t < 300; ++t) {
    const int left = gen.Int(1, 8);
    const int r = gen.Int(1, 3);
    const auto g = gen.Graph(left, left * r, 0.7);
    const auto a = FindPerfectRMatching(g, r);
    const auto b = FindPerfectRMatching(BipartiteGraph(g), r);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_EQ(a->assignment, b->assignment);
    }
  }
}

TEST(MatchingPropertyTest, LargeDenseGraphsMatch) {
  Gen gen(13);
  for (int t = 0; t < 5; ++t) {
    const auto g = gen.Graph(200, 600, 0.1);
    const auto m = FindPerfectRMatching(g, 3);
    if (m) {
      EXPECT_TRUE(ValidateRMatching(g, *m, 3));
    }
  }
}

}  // namespace
}  // namespace envyfree
