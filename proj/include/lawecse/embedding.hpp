#pragma once

#include <utility>
#include <vector>

#include "lawecse/labeled_tree.hpp"
#include "lawecse/weights.hpp"

namespace lawecse {

// A common subtree embedding between two trees: an injective partial map
// given as vertex pairs, the roots it is anchored at, and the inner vertices
// of its topological paths ("skipped" vertices, one penalty each).
struct Embedding {
  bool feasible = false;
  Weight weight = kNegInfinity;
  std::vector<std::pair<Vertex, Vertex>> pairs;  // sorted by first-tree vertex
  std::vector<Vertex> skipped_first;
  std::vector<Vertex> skipped_second;
  Vertex root_first = kNoVertex;
  Vertex root_second = kNoVertex;
};

inline Embedding infeasible_embedding() { return Embedding{}; }

}  // namespace lawecse
