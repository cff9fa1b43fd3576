#include "lawecse/matching.hpp"

#include <algorithm>
#include <cassert>

namespace lawecse {

namespace {

// Successive shortest augmenting paths with potentials on the instance
// extended by one zero-weight copy slot per row. Matching every row of the
// extended instance is exactly a maximum-weight matching of the original:
// a row whose best use is its copy slot stays unmatched. Requires rows <=
// cols so the smaller side is augmented; callers transpose if needed.
//
// Internally this minimizes cost = -weight. Row potentials are initialized
// to the row minima so reduced costs start non-negative, then each row is
// inserted by a dense Dijkstra scan over columns (real columns first, copy
// slots last, ties toward the lowest index).
struct SspSolver {
  int rows, cols, slots;  // slots = cols + rows
  const MatchingInstance& inst;
  std::vector<double> row_potential, col_potential;
  std::vector<int> row_match, col_match;

  explicit SspSolver(const MatchingInstance& instance)
      : rows(instance.rows),
        cols(instance.cols),
        slots(instance.cols + instance.rows),
        inst(instance),
        row_potential(rows, 0.0),
        col_potential(slots, 0.0),
        row_match(rows, -1),
        col_match(slots, -1) {}

  // cost of row i against extended column j; +inf where no edge exists and
  // for edges of weight <= 0 (they never help a maximum-weight matching).
  double cost(int i, int j) const {
    if (j >= cols) return j - cols == i ? 0.0 : kPosInfinity;
    Weight w = inst.at(i, j);
    return w > 0 ? -w : kPosInfinity;
  }

  void run() {
    for (int i = 0; i < rows; ++i) {
      double row_min = 0.0;  // the copy slot costs 0
      for (int j = 0; j < cols; ++j) row_min = std::min(row_min, cost(i, j));
      row_potential[i] = row_min;
    }
    std::vector<double> dist(slots);
    std::vector<int> reached_from(slots);  // column whose matched row relaxed this column
    std::vector<char> done(slots);
    for (int start = 0; start < rows; ++start) {
      std::fill(done.begin(), done.end(), 0);
      for (int j = 0; j < slots; ++j) {
        dist[j] = cost(start, j) - row_potential[start] - col_potential[j];
        reached_from[j] = -1;
      }
      int final_col = -1;
      while (true) {
        int j_best = -1;
        for (int j = 0; j < slots; ++j) {
          if (!done[j] && (j_best == -1 || dist[j] < dist[j_best])) j_best = j;
        }
        assert(j_best != -1 && dist[j_best] < kPosInfinity);
        done[j_best] = 1;
        if (col_match[j_best] == -1) {
          final_col = j_best;
          break;
        }
        int i = col_match[j_best];
        for (int j = 0; j < slots; ++j) {
          if (done[j]) continue;
          double through = dist[j_best] + cost(i, j) - row_potential[i] - col_potential[j];
          if (through < dist[j]) {
            dist[j] = through;
            reached_from[j] = j_best;
          }
        }
      }
      double final_dist = dist[final_col];
      for (int j = 0; j < slots; ++j) {
        if (done[j] && j != final_col) {
          col_potential[j] += dist[j] - final_dist;
          row_potential[col_match[j]] += final_dist - dist[j];
        }
      }
      row_potential[start] += final_dist;
      // Flip the alternating path back to the start row.
      int j = final_col;
      while (j != -1) {
        int prev = reached_from[j];
        int i = prev == -1 ? start : col_match[prev];
        col_match[j] = i;
        row_match[i] = j;
        j = prev;
      }
    }
  }

  Matching result() const {
    Matching m;
    for (int i = 0; i < rows; ++i) {
      if (row_match[i] >= 0 && row_match[i] < cols) {
        m.pairs.emplace_back(i, row_match[i]);
        m.weight += inst.at(i, row_match[i]);
      }
    }
    return m;
  }
};

MatchingInstance transpose(const MatchingInstance& inst) {
  MatchingInstance t(inst.cols, inst.rows);
  for (int i = 0; i < inst.rows; ++i) {
    for (int j = 0; j < inst.cols; ++j) t.at(j, i) = inst.at(i, j);
  }
  return t;
}

bool edge_kept(Weight w) { return w > 0; }

// Re-optimization after removing a matched vertex, following the alternating
// path construction: starting from the ex-partner, non-matching edges add
// their weight and matching edges subtract theirs. The path may end at an
// unmatched vertex of the opposite side (re-growing the matching) or drop a
// matching edge on the ex-partner's side, and may be empty. Reduced gains can
// be negative along the way, so a label-correcting sweep is used rather than
// Dijkstra. There is no positive-gain alternating cycle (the base matching is
// optimal), hence the sweeps reach a fixpoint.
//
// Implemented for an ex-partner on the row side; column-side deletions go
// through the transposed instance.
Weight best_gain_from_row(const MatchingInstance& inst, const std::vector<int>& row_match,
                          const std::vector<int>& col_match, int start_row, int removed_col,
                          MatchingCounters* counters) {
  const int rows = inst.rows, cols = inst.cols;
  std::vector<double> gain_col(cols, kNegInfinity);  // walk ends at col via non-matching edge
  std::vector<double> gain_row(rows, kNegInfinity);  // walk ends by unmatching this row
  for (int j = 0; j < cols; ++j) {
    if (j == removed_col || !edge_kept(inst.at(start_row, j))) continue;
    gain_col[j] = inst.at(start_row, j);
  }
  bool changed = true;
  int rounds = 0;
  while (changed && rounds <= rows + cols + 1) {
    changed = false;
    ++rounds;
    for (int j = 0; j < cols; ++j) {
      if (j == removed_col || col_match[j] == -1 || is_neg_infinite(gain_col[j])) continue;
      int i = col_match[j];
      double via = gain_col[j] - inst.at(i, j);
      if (counters) ++counters->relaxations;
      if (via > gain_row[i]) {
        gain_row[i] = via;
        for (int j2 = 0; j2 < cols; ++j2) {
          if (j2 == removed_col || j2 == row_match[i] || !edge_kept(inst.at(i, j2))) continue;
          if (counters) ++counters->relaxations;
          if (via + inst.at(i, j2) > gain_col[j2]) {
            gain_col[j2] = via + inst.at(i, j2);
            changed = true;
          }
        }
      }
    }
  }
  Weight best = 0;  // leaving the ex-partner unmatched is always available
  for (int j = 0; j < cols; ++j) {
    if (j != removed_col && col_match[j] == -1 && gain_col[j] > best) best = gain_col[j];
  }
  for (int i = 0; i < rows; ++i) {
    if (gain_row[i] > best) best = gain_row[i];
  }
  return best;
}

}  // namespace

Matching solve_mwm(const MatchingInstance& instance, MatchingCounters* counters) {
  if (counters) {
    ++counters->solves;
    counters->cells += static_cast<std::uint64_t>(instance.rows) * instance.cols;
  }
  if (instance.rows == 0 || instance.cols == 0) return Matching{};
  if (instance.rows <= instance.cols) {
    SspSolver solver(instance);
    solver.run();
    return solver.result();
  }
  MatchingInstance t = transpose(instance);
  SspSolver solver(t);
  solver.run();
  Matching m = solver.result();
  for (auto& [a, b] : m.pairs) std::swap(a, b);
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

DeletionFamily solve_all_deletions(const MatchingInstance& instance, MatchSide side,
                                   MatchingCounters* counters) {
  DeletionFamily family;
  family.side = side;
  family.base = solve_mwm(instance, counters);

  const int n = side == MatchSide::kLeft ? instance.rows : instance.cols;
  family.weight_without.assign(n, family.base.weight);
  if (family.base.pairs.empty()) return family;

  std::vector<int> row_match(instance.rows, -1), col_match(instance.cols, -1);
  for (const auto& [i, j] : family.base.pairs) {
    row_match[i] = j;
    col_match[j] = i;
  }

  // An unmatched vertex leaves the matching untouched; for a matched one, the
  // weight of its edge comes off and the best alternating-path gain from the
  // ex-partner comes back.
  if (side == MatchSide::kRight) {
    for (int c = 0; c < instance.cols; ++c) {
      if (col_match[c] == -1) continue;
      int partner = col_match[c];
      Weight gain =
          best_gain_from_row(instance, row_match, col_match, partner, c, counters);
      family.weight_without[c] = family.base.weight - instance.at(partner, c) + gain;
    }
  } else {
    MatchingInstance t = transpose(instance);
    for (int r = 0; r < instance.rows; ++r) {
      if (row_match[r] == -1) continue;
      int partner = row_match[r];  // a column of the original = row of t
      Weight gain = best_gain_from_row(t, col_match, row_match, partner, r, counters);
      family.weight_without[r] = family.base.weight - instance.at(r, partner) + gain;
    }
  }
  return family;
}

Matching solve_without(const MatchingInstance& instance, MatchSide side, int removed,
                       MatchingCounters* counters) {
  MatchingInstance reduced(side == MatchSide::kLeft ? instance.rows - 1 : instance.rows,
                           side == MatchSide::kRight ? instance.cols - 1 : instance.cols);
  for (int i = 0; i < instance.rows; ++i) {
    if (side == MatchSide::kLeft && i == removed) continue;
    int ri = side == MatchSide::kLeft && i > removed ? i - 1 : i;
    for (int j = 0; j < instance.cols; ++j) {
      if (side == MatchSide::kRight && j == removed) continue;
      int rj = side == MatchSide::kRight && j > removed ? j - 1 : j;
      reduced.at(ri, rj) = instance.at(i, j);
    }
  }
  Matching m = solve_mwm(reduced, counters);
  for (auto& [i, j] : m.pairs) {
    if (side == MatchSide::kLeft && i >= removed) ++i;
    if (side == MatchSide::kRight && j >= removed) ++j;
  }
  return m;
}

CardinalityTwoPick best_cardinality_two_pick(std::span<const Weight> col_first,
                                             std::span<const Weight> col_second) {
  assert(col_first.size() == col_second.size());
  LeaveOneOutMax top_first, top_second;
  for (size_t i = 0; i < col_first.size(); ++i) {
    if (!is_neg_infinite(col_first[i])) top_first.add(static_cast<int>(i), col_first[i]);
    if (!is_neg_infinite(col_second[i])) top_second.add(static_cast<int>(i), col_second[i]);
  }
  CardinalityTwoPick pick;
  const int candidates_first[2] = {top_first.best_index, top_first.second_index};
  const int candidates_second[2] = {top_second.best_index, top_second.second_index};
  for (int a : candidates_first) {
    for (int b : candidates_second) {
      if (a < 0 || b < 0 || a == b) continue;
      Weight w = col_first[a] + col_second[b];
      if (w > pick.weight) {
        pick.weight = w;
        pick.first_row = a;
        pick.second_row = b;
      }
    }
  }
  return pick;
}

}  // namespace lawecse
