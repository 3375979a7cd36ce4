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

#ifndef ENVYFREE_MATCHING_H_
#define ENVYFREE_MATCHING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace envyfree {

// Bipartite graph with left vertices (agents) and right vertices (items).
// Adjacency lists are kept sorted and duplicate-free.
class BipartiteGraph {
 public:
  // Sorts each list. Throws InvalidArgument on a negative count, an
  // out-of-range neighbor or a duplicate, and DimensionMismatch when
  // adjacency.size() != left_count.
  BipartiteGraph(int left_count, int right_count,
                 std::vector<std::vector<int>> adjacency);

  int left_count() const { return left_count_; }
  int right_count() const { return right_count_; }
  std::span<const int> neighbors(int left) const { return adjacency_[left]; }
  bool HasEdge(int left, int right) const;
  std::size_t edge_count() const;

  // One line per left vertex: "<left>: <right> <right> ...".
  std::string DebugString() const;

 private:
  int left_count_;
  int right_count_;
  std::vector<std::vector<int>> adjacency_;
};

// assignment[v] lists the right vertices matched to left vertex v.
struct RMatching {
  std::vector<std::vector<int>> assignment;
};

// Perfect r-matching via augmenting paths over left vertices with capacity r.
// Returns nullopt when none exists. Throws DimensionMismatch when
// right_count != r * left_count and InvalidArgument when r < 1.
// Deterministic: free capacity is served in left-index order and neighbors
// in ascending order.
std::optional<RMatching> FindPerfectRMatching(const BipartiteGraph& g, int r);

// Largest left_count accepted by FindHallViolation.
inline constexpr int kMaxHallLeftCount = 20;

// Exhaustive scan of all nonempty left subsets S, in increasing bitmask
// order, for |N(S)| < r|S|. Returns the first violating subset (sorted), or
// nullopt if the capacity-r Hall condition holds. Throws InvalidArgument for
// left_count > kMaxHallLeftCount.
std::optional<std::vector<int>> FindHallViolation(const BipartiteGraph& g, int r);

// True iff `m` is a perfect r-matching contained in g.
bool ValidateRMatching(const BipartiteGraph& g, const RMatching& m, int r);

}  // namespace envyfree

#endif  // ENVYFREE_MATCHING_H_
