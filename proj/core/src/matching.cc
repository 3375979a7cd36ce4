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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>

#include "envyfree/errors.h"

namespace envyfree {

BipartiteGraph::BipartiteGraph(int left_count, int right_count,
                               std::vector<std::vector<int>> adjacency)
    : left_count_(left_count),
      right_count_(right_count),
      adjacency_(std::move(adjacency)) {
  if (left_count < 0 || right_count < 0) {
    throw InvalidArgument("bipartite graph: vertex counts must be nonnegative");
  }
  if (adjacency_.size() != static_cast<std::size_t>(left_count)) {
    throw DimensionMismatch("bipartite graph: one adjacency list per left vertex");
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw InvalidArgument("bipartite graph: duplicate edge");
    }
    if (!list.empty() && (list.front() < 0 || list.back() >= right_count)) {
      throw InvalidArgument("bipartite graph: neighbor out of range");
    }
  }
}

bool BipartiteGraph::HasEdge(int left, int right) const {
  if (left < 0 || left >= left_count_) return false;
  const auto& list = adjacency_[left];
  return std::binary_search(list.begin(), list.end(), right);
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adjacency_) total += list.size();
  return total;
}

std::string BipartiteGraph::DebugString() const {
  std::ostringstream out;
  for (int v = 0; v < left_count_; ++v) {
    out << v << ":";
    for (int w : adjacency_[v]) out << " " << w;
    out << "\n";
  }
  return out.str();
}

namespace {

// Kuhn-style augmenting paths on the capacity form of the r-copy expansion.
// Moving right vertex w from its current owner to `v` leaves the owner's load
// unchanged once the owner finds a replacement, so loads only grow at the
// root of a successful search.
class CapacityMatcher {
 public:
  CapacityMatcher(const BipartiteGraph& g, int capacity)
      : g_(g),
        capacity_(capacity),
        owner_(g.right_count(), -1),
        load_(g.left_count(), 0),
        visited_(g.right_count(), 0) {}

  int Run() {
    int matched = 0;
    // Phases: visited marks persist within a phase; stop after a phase with
    // no augmentation, which is then a full search from every free slot.
    bool progress = true;
    while (progress) {
      progress = false;
      ++stamp_;
      for (int v = 0; v < g_.left_count(); ++v) {
        while (load_[v] < capacity_ && Augment(v)) {
          ++load_[v];
          ++matched;
          progress = true;
        }
      }
    }
    return matched;
  }

  RMatching Extract() const {
    RMatching m;
    m.assignment.resize(g_.left_count());
    for (int w = 0; w < g_.right_count(); ++w) {
      if (owner_[w] >= 0) m.assignment[owner_[w]].push_back(w);
    }
    return m;
  }

 private:
  bool Augment(int v) {
    for (int w : g_.neighbors(v)) {
      if (visited_[w] == stamp_) continue;
      visited_[w] = stamp_;
      if (owner_[w] < 0 || Augment(owner_[w])) {
        owner_[w] = v;
        return true;
      }
    }
    return false;
  }

  const BipartiteGraph& g_;
  int capacity_;
  std::vector<int> owner_;
  std::vector<int> load_;
  std::vector<std::uint32_t> visited_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

std::optional<RMatching> FindPerfectRMatching(const BipartiteGraph& g, int r) {
  if (r < 1) throw InvalidArgument("r-matching: r must be >= 1");
  if (static_cast<long long>(g.right_count()) !=
      static_cast<long long>(r) * g.left_count()) {
    throw DimensionMismatch("perfect r-matching needs right_count = r * left_count");
  }
  // Cheap necessary condition: every vertex needs enough neighbors.
  std::vector<char> covered(g.right_count(), 0);
  for (int v = 0; v < g.left_count(); ++v) {
    if (g.neighbors(v).size() < static_cast<std::size_t>(r)) return std::nullopt;
    for (int w : g.neighbors(v)) covered[w] = 1;
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    return std::nullopt;
  }
  CapacityMatcher matcher(g, r);
  if (matcher.Run() != g.right_count()) return std::nullopt;
  return matcher.Extract();
}

std::optional<std::vector<int>> FindHallViolation(const BipartiteGraph& g, int r) {
  const int left = g.left_count();
  if (left > kMaxHallLeftCount) {
    throw InvalidArgument("hall_violation_search: left_count exceeds " +
                          std::to_string(kMaxHallLeftCount));
  }
  const std::size_t words = (static_cast<std::size_t>(g.right_count()) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> masks(left, std::vector<std::uint64_t>(words, 0));
  for (int v = 0; v < left; ++v) {
    for (int w : g.neighbors(v)) masks[v][w / 64] |= std::uint64_t{1} << (w % 64);
  }
  std::vector<std::uint64_t> hood(words);
  const std::uint32_t limit = std::uint32_t{1} << left;
  for (std::uint32_t subset = 1; subset < limit; ++subset) {
    std::fill(hood.begin(), hood.end(), 0);
    int size = 0;
    for (int v = 0; v < left; ++v) {
      if (!(subset >> v & 1U)) continue;
      ++size;
      for (std::size_t k = 0; k < words; ++k) hood[k] |= masks[v][k];
    }
    long long hood_size = 0;
    for (std::uint64_t word : hood) hood_size += __builtin_popcountll(word);
    if (hood_size < static_cast<long long>(r) * size) {
      std::vector<int> violating;
      for (int v = 0; v < left; ++v) {
        if (subset >> v & 1U) violating.push_back(v);
      }
      return violating;
    }
  }
  return std::nullopt;
}

bool ValidateRMatching(const BipartiteGraph& g, const RMatching& m, int r) {
  if (r < 1) return false;
  if (m.assignment.size() != static_cast<std::size_t>(g.left_count())) return false;
  std::vector<char> used(g.right_count(), 0);
  long long total = 0;
  for (int v = 0; v < g.left_count(); ++v) {
    const auto& items = m.assignment[v];
    if (items.size() != static_cast<std::size_t>(r)) return false;
    for (int w : items) {
      if (w < 0 || w >= g.right_count() || used[w] || !g.HasEdge(v, w)) return false;
      used[w] = 1;
      ++total;
    }
  }
  return total == g.right_count();
}

}  // namespace envyfree
