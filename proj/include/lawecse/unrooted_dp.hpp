#pragma once

#include <cstdint>
#include <vector>

#include "lawecse/embedding.hpp"
#include "lawecse/labeled_tree.hpp"
#include "lawecse/matching.hpp"
#include "lawecse/rooted_dp.hpp"
#include "lawecse/weight_scheme.hpp"

namespace lawecse {

// Table entries L(u, context-of-v, type) shared across every rooting of the
// second tree: the entry for (u, v) under root s only depends on the subtree
// of v pointing away from s, i.e. on the directed context (v, parent-of-v).
// Context slot 0 of v is the root context (s = v); slot 1+k points at
// neighbors(v)[k].
class ContextTable {
 public:
  ContextTable(const LabeledTree& second, int n1);

  int size_first() const { return n1_; }
  int size_second() const { return n2_; }
  int context_count() const { return static_cast<int>(ctx_vertex_.size()); }
  int context_of(Vertex v, Vertex parent) const;
  Vertex context_vertex(int ctx) const { return ctx_vertex_[ctx]; }
  Vertex context_parent(int ctx) const { return ctx_parent_[ctx]; }

  Weight mapped(Vertex u, int ctx) const { return mapped_[index(u, ctx)]; }
  Weight skipped(Vertex u, int ctx) const { return skipped_[index(u, ctx)]; }
  bool filled(Vertex u, int ctx) const { return filled_[index(u, ctx)] != 0; }

  // Instrumentation: from-scratch matching solves per (u, v) pair; the
  // computation schedule guarantees at most two.
  int solves_for_pair(Vertex u, Vertex v) const {
    return pair_solves_[static_cast<size_t>(u) * n2_ + v];
  }
  int max_solves_per_pair() const;

 private:
  friend class UnrootedEngine;
  size_t index(Vertex u, int ctx) const {
    return static_cast<size_t>(ctx) * n1_ + u;
  }

  int n1_, n2_;
  std::vector<int> offset_;  // first context slot per vertex of the second tree
  std::vector<Vertex> ctx_vertex_, ctx_parent_;
  std::vector<Weight> mapped_, skipped_;
  std::vector<std::uint8_t> filled_;
  std::vector<std::uint8_t> pair_solves_;
};

// Fills every context entry by iterating over all roots of the second tree
// and sharing entries across roots. Per (u, v) pair at most one matching
// instance is solved standalone; the second touch solves the full instance
// over all neighbors of v and derives every remaining context from it.
ContextTable compute_all_context_tables(const LabeledTree& first, Vertex fixed_root,
                                        const LabeledTree& second, const WeightScheme& scheme,
                                        EngineStats* stats = nullptr);

// Best embedding whose topmost first-tree vertex (under the fixed root) is
// mapped: the maximum mapped entry over all contexts.
struct MappedTopBest {
  Weight weight = kNegInfinity;
  Vertex u = kNoVertex;
  int ctx = -1;
};
MappedTopBest best_mapped_top(const ContextTable& table);

// Best embedding whose topmost first-tree vertex u is skipped: two distinct
// children of u embed into the two sides of an edge (v, w) of the second
// tree, found via a cardinality-two matching on the top-two entries.
struct SkippedTopBest {
  Weight weight = kNegInfinity;
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;  // second-tree edge (v, w)
  Vertex w = kNoVertex;
  Vertex child_toward_v = kNoVertex;
  Vertex child_toward_w = kNoVertex;
};
SkippedTopBest best_skipped_top(const ContextTable& table, const RootedView& first_view,
                                const LabeledTree& second, const WeightScheme& scheme);

// Best embedding over all root pairs. The first tree is rooted at its first
// declared vertex; roots of the second tree are shared through the context
// table.
Embedding lawecse_unrooted(const LabeledTree& first, const LabeledTree& second,
                           const WeightScheme& scheme, EngineStats* stats = nullptr);

// Reference implementation: one independent rooted run per root pair.
// Testing and benchmarking only.
Embedding naive_unrooted(const LabeledTree& first, const LabeledTree& second,
                         const WeightScheme& scheme, EngineStats* stats = nullptr);

}  // namespace lawecse
