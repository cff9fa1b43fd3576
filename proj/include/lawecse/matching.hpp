#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lawecse/weights.hpp"

namespace lawecse {

// Dense weighted bipartite graph; kNegInfinity marks an absent edge.
struct MatchingInstance {
  int rows = 0;
  int cols = 0;
  std::vector<Weight> w;

  MatchingInstance() = default;
  MatchingInstance(int r, int c)
      : rows(r), cols(c), w(static_cast<size_t>(r) * c, kNegInfinity) {}

  Weight& at(int i, int j) { return w[static_cast<size_t>(i) * cols + j]; }
  Weight at(int i, int j) const { return w[static_cast<size_t>(i) * cols + j]; }
};

struct Matching {
  std::vector<std::pair<int, int>> pairs;  // (row, col), sorted by row
  Weight weight = 0;
};

struct MatchingCounters {
  std::uint64_t solves = 0;       // from-scratch solver runs
  std::uint64_t cells = 0;        // matrix cells touched by from-scratch runs
  std::uint64_t relaxations = 0;  // edge relaxations in deletion re-optimization
};

// Maximum-weight matching over matchings of any cardinality. Edges of weight
// <= 0 never improve such a matching and are treated as absent, so the
// returned weight is always >= 0 (the empty matching). Augmentation proceeds
// from the smaller side in index order; ties are resolved toward lower
// indices, making the returned pair set deterministic.
Matching solve_mwm(const MatchingInstance& instance, MatchingCounters* counters = nullptr);

enum class MatchSide { kLeft, kRight };

// Base matching plus the re-optimized matching weight after deleting each
// vertex of one side in turn.
struct DeletionFamily {
  Matching base;
  MatchSide side = MatchSide::kRight;
  std::vector<Weight> weight_without;
};

DeletionFamily solve_all_deletions(const MatchingInstance& instance, MatchSide side,
                                   MatchingCounters* counters = nullptr);

// From-scratch matching on the instance with one vertex removed; pair indices
// refer to the original instance. Used when an explicit deletion matching is
// needed (the families above only carry weights).
Matching solve_without(const MatchingInstance& instance, MatchSide side, int removed,
                       MatchingCounters* counters = nullptr);

// Best and second-best of a sequence, answering max-with-one-index-excluded
// queries in O(1).
struct LeaveOneOutMax {
  Weight best = kNegInfinity;
  int best_index = -1;
  Weight second = kNegInfinity;
  int second_index = -1;

  void add(int index, Weight value) {
    if (value > best) {
      second = best;
      second_index = best_index;
      best = value;
      best_index = index;
    } else if (value > second) {
      second = value;
      second_index = index;
    }
  }
  Weight max_all() const { return best; }
  Weight max_excluding(int index) const { return index == best_index ? second : best; }
};

// Maximum of col_first[b1] + col_second[b2] over distinct rows b1 != b2,
// i.e. a maximum-weight matching of cardinality exactly two on the graph
// where row b is joined to the two column vertices with these weights.
// Keeping the top-two finite entries per column is enough: at most four
// combinations remain. kNegInfinity when no feasible pair exists.
struct CardinalityTwoPick {
  Weight weight = kNegInfinity;
  int first_row = -1;   // row matched toward the first column
  int second_row = -1;  // row matched toward the second column
};

CardinalityTwoPick best_cardinality_two_pick(std::span<const Weight> col_first,
                                             std::span<const Weight> col_second);

inline Weight best_cardinality_two(std::span<const Weight> col_first,
                                   std::span<const Weight> col_second) {
  return best_cardinality_two_pick(col_first, col_second).weight;
}

}  // namespace lawecse
