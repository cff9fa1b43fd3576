#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lawecse/labeled_tree.hpp"
#include "lawecse/matching.hpp"
#include "lawecse/random_trees.hpp"
#include "lawecse/weight_scheme.hpp"

namespace testsupport {

using lawecse::kNegInfinity;
using lawecse::LabeledTree;
using lawecse::MatchingInstance;
using lawecse::SplitMix64;
using lawecse::Weight;
using lawecse::WeightScheme;

inline bool close(Weight a, Weight b, double tol = 1e-9) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol;
}

// Exhaustive maximum-weight matching by recursion over rows; the independent
// check for the solver. Each row is left unmatched or matched to any free
// column with a finite edge.
inline Weight brute_force_mwm(const MatchingInstance& inst) {
  std::vector<char> used(inst.cols, 0);
  Weight best = 0;
  auto recurse = [&](auto&& self, int row, Weight acc) -> void {
    if (row == inst.rows) {
      best = std::max(best, acc);
      return;
    }
    self(self, row + 1, acc);
    for (int j = 0; j < inst.cols; ++j) {
      if (used[j] || lawecse::is_neg_infinite(inst.at(row, j))) continue;
      used[j] = 1;
      self(self, row + 1, acc + inst.at(row, j));
      used[j] = 0;
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

inline MatchingInstance random_instance(int rows, int cols, SplitMix64& rng,
                                        double absent_share = 0.2) {
  MatchingInstance inst(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (rng.unit() < absent_share) continue;
      inst.at(i, j) = rng.unit() * 8.0 - 3.0;  // negatives included
    }
  }
  return inst;
}

inline std::vector<std::string> small_alphabet() { return {"a", "b", "c"}; }

// Random scheme over the 3-symbol alphabet: pair weights uniform in [-2, 2]
// with a 10% chance of being forbidden.
inline WeightScheme random_scheme(SplitMix64& rng, Weight penalty) {
  WeightScheme scheme;
  scheme.set_vertex_default(-1);
  scheme.set_edge_default(0);
  scheme.set_penalty(penalty);
  for (const auto& a : small_alphabet()) {
    for (const auto& b : small_alphabet()) {
      Weight vw = rng.unit() < 0.1 ? kNegInfinity : rng.unit() * 4.0 - 2.0;
      Weight ew = rng.unit() < 0.1 ? kNegInfinity : rng.unit() * 4.0 - 2.0;
      scheme.set_vertex_pair(a, b, vw);
      scheme.set_edge_pair(a, b, ew);
    }
  }
  return scheme;
}

inline LabeledTree random_labeled_tree(int size, int degree_cap, SplitMix64& rng) {
  return lawecse::random_tree(size, degree_cap, rng, small_alphabet(), small_alphabet());
}

inline std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string content;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) content.append(buf, n);
  std::fclose(f);
  return content;
}

inline LabeledTree load_tree(const std::string& name) {
  return LabeledTree::parse(read_file(data_path(name)));
}

inline WeightScheme load_scheme(const std::string& name) {
  return WeightScheme::parse(read_file(data_path(name)));
}

// Maximum common subtree by brute force: enumerates connected vertex subsets
// of the first tree and label/adjacency-preserving injections into the
// second. Independent of both the oracle enumerator and the solvers.
inline int mcs_brute_force(const LabeledTree& t1, const LabeledTree& t2) {
  const int n = t1.size();
  int best = 0;

  std::vector<lawecse::Vertex> subset;
  std::vector<char> in_subset(n, 0);

  auto count_injections = [&](const std::vector<lawecse::Vertex>& verts) -> bool {
    // Map verts (a connected subtree of t1, listed in discovery order with
    // verts[0] first) into t2 by backtracking.
    std::vector<lawecse::Vertex> image(verts.size(), lawecse::kNoVertex);
    std::vector<char> used(t2.size(), 0);
    auto extend = [&](auto&& self, size_t k) -> bool {
      if (k == verts.size()) return true;
      lawecse::Vertex x = verts[k];
      // anchor: some earlier vertex adjacent to x
      int anchor = -1;
      for (size_t i = 0; i < k; ++i) {
        const auto& nb = t1.neighbors(verts[i]);
        if (std::find(nb.begin(), nb.end(), x) != nb.end()) {
          anchor = static_cast<int>(i);
          break;
        }
      }
      for (lawecse::Vertex y = 0; y < t2.size(); ++y) {
        if (used[y] || t1.vertex_label(x) != t2.vertex_label(y)) continue;
        if (anchor >= 0) {
          const auto& nb = t2.neighbors(image[anchor]);
          if (std::find(nb.begin(), nb.end(), y) == nb.end()) continue;
        }
        image[k] = y;
        used[y] = 1;
        if (self(self, k + 1)) return true;
        used[y] = 0;
      }
      return false;
    };
    return extend(extend, 0);
  };

  auto grow = [&](auto&& self, lawecse::Vertex frontier_min) -> void {
    if (static_cast<int>(subset.size()) > best && count_injections(subset)) {
      best = static_cast<int>(subset.size());
    }
    // extend by any neighbor of the subset with index >= frontier_min rule
    // relaxed: we enumerate connected supersets without repetition by only
    // adding vertices larger than the first vertex.
    for (lawecse::Vertex x = frontier_min; x < n; ++x) {
      if (in_subset[x]) continue;
      bool adjacent = false;
      for (lawecse::Vertex s : subset) {
        const auto& nb = t1.neighbors(s);
        if (std::find(nb.begin(), nb.end(), x) != nb.end()) {
          adjacent = true;
          break;
        }
      }
      if (!adjacent) continue;
      subset.push_back(x);
      in_subset[x] = 1;
      self(self, frontier_min);
      in_subset[x] = 0;
      subset.pop_back();
    }
  };

  for (lawecse::Vertex start = 0; start < n; ++start) {
    subset.assign(1, start);
    std::fill(in_subset.begin(), in_subset.end(), 0);
    in_subset[start] = 1;
    grow(grow, start + 1);
  }
  return best;
}

}  // namespace testsupport
