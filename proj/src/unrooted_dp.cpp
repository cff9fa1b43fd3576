#include "lawecse/unrooted_dp.hpp"

#include <algorithm>
#include <cassert>

namespace lawecse {

ContextTable::ContextTable(const LabeledTree& second, int n1)
    : n1_(n1), n2_(second.size()) {
  offset_.resize(second.size());
  int total = 0;
  for (Vertex v = 0; v < second.size(); ++v) {
    offset_[v] = total;
    total += 1 + second.degree(v);
  }
  ctx_vertex_.resize(total);
  ctx_parent_.resize(total);
  for (Vertex v = 0; v < second.size(); ++v) {
    ctx_vertex_[offset_[v]] = v;
    ctx_parent_[offset_[v]] = kNoVertex;
    const auto& nb = second.neighbors(v);
    for (size_t k = 0; k < nb.size(); ++k) {
      ctx_vertex_[offset_[v] + 1 + k] = v;
      ctx_parent_[offset_[v] + 1 + k] = nb[k];
    }
  }
  size_t entries = static_cast<size_t>(total) * n1;
  mapped_.assign(entries, kNegInfinity);
  skipped_.assign(entries, kNegInfinity);
  filled_.assign(entries, 0);
  pair_solves_.assign(static_cast<size_t>(n1) * n2_, 0);
}

int ContextTable::context_of(Vertex v, Vertex parent) const {
  if (parent == kNoVertex) return offset_[v];
  int slot = offset_[v] + 1;
  int end = (v + 1 < n2_ ? offset_[v + 1] : context_count());
  for (int c = slot; c < end; ++c) {
    if (ctx_parent_[c] == parent) return c;
  }
  throw InputError("context_of: vertices are not adjacent");
}

int ContextTable::max_solves_per_pair() const {
  int m = 0;
  for (std::uint8_t s : pair_solves_) m = std::max(m, static_cast<int>(s));
  return m;
}

// Fills the context table by iterating over all roots s of the second tree
// and running the rooted recursion with entries shared across roots. Per
// (u, v) pair the schedule solves at most two matching instances from
// scratch:
//   - first touch with a parent context: that one sub-instance, standalone;
//   - second distinct context (or a first root context): the full instance
//     over all neighbors of v, whose deletion family then yields every
//     remaining context at once.
// By then every column entry the full instance needs has been produced by an
// earlier pass, because the first touch's root lies on the far side of a
// different neighbor.
class UnrootedEngine {
 public:
  UnrootedEngine(const LabeledTree& first, Vertex fixed_root, const LabeledTree& second,
                 const WeightScheme& scheme, EngineStats* stats)
      : t1_(first),
        t2_(second),
        view1_(root_at(first, fixed_root)),
        pw_(first, second, scheme),
        table_(second, first.size()),
        stats_(stats) {
    n1_ = first.size();
    n2_ = second.size();
    pair_state_.assign(static_cast<size_t>(n1_) * n2_, 0);
    filled_count_.assign(table_.context_count(), 0);

    child_edge_label1_.resize(n1_);
    for (Vertex u = 0; u < n1_; ++u) {
      for (Vertex b : view1_.children[u]) {
        child_edge_label1_[u].push_back(t1_.edge_label_id(u, b));
      }
    }
    neighbor_edge_label2_.resize(n2_);
    away_slot_.resize(n2_);
    for (Vertex v = 0; v < n2_; ++v) {
      const auto& nb = t2_.neighbors(v);
      for (size_t k = 0; k < nb.size(); ++k) {
        neighbor_edge_label2_[v].push_back(t2_.edge_label_id(v, nb[k]));
        // context of neighbor nb[k] with parent v, i.e. its subtree away
        // from v
        away_slot_[v].push_back(table_.context_of(nb[k], v));
      }
    }
  }

  ContextTable run() {
    std::vector<Vertex> order;
    std::vector<Vertex> parent_of(n2_);
    order.reserve(n2_);
    for (Vertex s = 0; s < n2_; ++s) {
      // BFS from s; the reversed order processes children before parents.
      order.clear();
      order.push_back(s);
      parent_of[s] = kNoVertex;
      for (size_t head = 0; head < order.size(); ++head) {
        Vertex v = order[head];
        for (Vertex w : t2_.neighbors(v)) {
          if (w != parent_of[v]) {
            parent_of[w] = v;
            order.push_back(w);
          }
        }
      }
      for (size_t i = order.size(); i-- > 0;) {
        Vertex v = order[i];
        Vertex parent = parent_of[v];
        int ctx = parent == kNoVertex ? context_slot_root(v) : context_slot(v, parent);
        if (filled_count_[ctx] == n1_) continue;
        for (Vertex u : view1_.postorder) ensure(u, v, ctx, parent);
      }
    }
    if (stats_) {
      stats_->matching_solves += counters_.solves;
      stats_->matching_cells += counters_.cells;
      stats_->relaxations += counters_.relaxations;
      stats_->max_solves_per_pair =
          std::max(stats_->max_solves_per_pair, table_.max_solves_per_pair());
    }
    return std::move(table_);
  }

 private:
  int context_slot_root(Vertex v) const { return table_.offset_[v]; }
  int context_slot(Vertex v, Vertex parent) const {
    const auto& nb = t2_.neighbors(v);
    auto it = std::lower_bound(nb.begin(), nb.end(), parent);
    return table_.offset_[v] + 1 + static_cast<int>(it - nb.begin());
  }

  void ensure(Vertex u, Vertex v, int ctx, Vertex parent) {
    if (table_.filled(u, ctx)) return;
    std::uint8_t& state = pair_state_[static_cast<size_t>(u) * n2_ + v];
    if (state == 0 && parent != kNoVertex) {
      standalone_fill(u, v, ctx, parent);
      state = 1;
    } else {
      full_fill(u, v);
      state = 2;
    }
  }

  Weight cell_weight(Vertex u, size_t bi, Vertex b, Vertex v, size_t ci) const {
    int slot = away_slot_[v][ci];
    assert(table_.filled(b, slot));
    Weight cell = table_.skipped(b, slot);
    Weight m = table_.mapped(b, slot);
    if (!is_neg_infinite(m)) {
      Weight ew = pw_.edge(child_edge_label1_[u][bi], neighbor_edge_label2_[v][ci]);
      cell = std::max(cell, m + ew);
    }
    return cell;
  }

  void count_solve(Vertex u, Vertex v) {
    std::uint8_t& n = table_.pair_solves_[static_cast<size_t>(u) * n2_ + v];
    if (n < 255) ++n;
  }

  void write(Vertex u, int ctx, Weight mapped, Weight skipped) {
    size_t i = table_.index(u, ctx);
    table_.mapped_[i] = mapped;
    table_.skipped_[i] = skipped;
    table_.filled_[i] = 1;
    ++filled_count_[ctx];
    if (stats_) stats_->table_entries += 2;
  }

  // First touch of the pair under a parent context: solve just this
  // sub-instance, without the main instance (its column toward the parent is
  // not available yet).
  void standalone_fill(Vertex u, Vertex v, int ctx, Vertex parent) {
    const auto& cu = view1_.children[u];
    const auto& nb = t2_.neighbors(v);
    Weight wv = pw_.vertex(t1_.vertex_label_id(u), t2_.vertex_label_id(v));

    Weight mapped = kNegInfinity;
    if (!is_neg_infinite(wv)) {
      Weight matched = 0;
      if (!cu.empty() && nb.size() > 1) {
        instance_.rows = static_cast<int>(cu.size());
        instance_.cols = static_cast<int>(nb.size()) - 1;
        instance_.w.assign(static_cast<size_t>(instance_.rows) * instance_.cols, kNegInfinity);
        int col = 0;
        for (size_t ci = 0; ci < nb.size(); ++ci) {
          if (nb[ci] == parent) continue;
          for (size_t bi = 0; bi < cu.size(); ++bi) {
            instance_.at(static_cast<int>(bi), col) = cell_weight(u, bi, cu[bi], v, ci);
          }
          ++col;
        }
        matched = solve_mwm(instance_, &counters_).weight;
        count_solve(u, v);
      }
      mapped = wv + matched;
    }

    Weight skipped = kNegInfinity;
    if (!pw_.forbids_skips()) {
      Weight best = kNegInfinity;
      for (Vertex b : cu) {
        assert(table_.filled(b, ctx));
        best = std::max(best, std::max(table_.mapped(b, ctx), table_.skipped(b, ctx)));
      }
      for (size_t ci = 0; ci < nb.size(); ++ci) {
        if (nb[ci] == parent) continue;
        int slot = away_slot_[v][ci];
        assert(table_.filled(u, slot));
        best = std::max(best, std::max(table_.mapped(u, slot), table_.skipped(u, slot)));
      }
      if (!is_neg_infinite(best)) skipped = best - pw_.penalty();
    }
    write(u, ctx, mapped, skipped);
  }

  // Second touch (or a first touch at the root context): every column is
  // available, so solve the full instance once and derive all contexts of v
  // from its deletion family and the leave-one-out maxima.
  void full_fill(Vertex u, Vertex v) {
    const auto& cu = view1_.children[u];
    const auto& nb = t2_.neighbors(v);
    Weight wv = pw_.vertex(t1_.vertex_label_id(u), t2_.vertex_label_id(v));

    Weight base = 0;
    const Weight* without = nullptr;
    DeletionFamily family;
    if (!is_neg_infinite(wv) && !cu.empty() && !nb.empty()) {
      instance_.rows = static_cast<int>(cu.size());
      instance_.cols = static_cast<int>(nb.size());
      instance_.w.assign(static_cast<size_t>(instance_.rows) * instance_.cols, kNegInfinity);
      for (size_t ci = 0; ci < nb.size(); ++ci) {
        for (size_t bi = 0; bi < cu.size(); ++bi) {
          instance_.at(static_cast<int>(bi), static_cast<int>(ci)) =
              cell_weight(u, bi, cu[bi], v, ci);
        }
      }
      family = solve_all_deletions(instance_, MatchSide::kRight, &counters_);
      count_solve(u, v);
      base = family.base.weight;
      without = family.weight_without.data();
    }

    LeaveOneOutMax away_mapped, away_skipped;
    if (!pw_.forbids_skips()) {
      for (size_t ci = 0; ci < nb.size(); ++ci) {
        int slot = away_slot_[v][ci];
        assert(table_.filled(u, slot));
        away_mapped.add(static_cast<int>(ci), table_.mapped(u, slot));
        away_skipped.add(static_cast<int>(ci), table_.skipped(u, slot));
      }
    }

    const int base_slot = table_.offset_[v];
    for (int s = 0; s <= static_cast<int>(nb.size()); ++s) {
      int ctx = base_slot + s;
      if (table_.filled(u, ctx)) continue;  // keep a standalone-computed value

      Weight mapped = kNegInfinity;
      if (!is_neg_infinite(wv)) {
        mapped = wv + (s == 0 ? base : (without ? without[s - 1] : 0.0));
      }

      Weight skipped = kNegInfinity;
      if (!pw_.forbids_skips()) {
        Weight best = kNegInfinity;
        for (Vertex b : cu) {
          assert(table_.filled(b, ctx));
          best = std::max(best, std::max(table_.mapped(b, ctx), table_.skipped(b, ctx)));
        }
        if (s == 0) {
          best = std::max(best, std::max(away_mapped.max_all(), away_skipped.max_all()));
        } else {
          best = std::max(best, std::max(away_mapped.max_excluding(s - 1),
                                         away_skipped.max_excluding(s - 1)));
        }
        if (!is_neg_infinite(best)) skipped = best - pw_.penalty();
      }
      write(u, ctx, mapped, skipped);
    }
  }

  const LabeledTree& t1_;
  const LabeledTree& t2_;
  RootedView view1_;
  PairWeightCache pw_;
  ContextTable table_;
  EngineStats* stats_;
  int n1_ = 0, n2_ = 0;
  std::vector<std::uint8_t> pair_state_;
  std::vector<int> filled_count_;
  std::vector<std::vector<int>> child_edge_label1_;
  std::vector<std::vector<int>> neighbor_edge_label2_;
  std::vector<std::vector<int>> away_slot_;
  MatchingInstance instance_;
  MatchingCounters counters_;
};

ContextTable compute_all_context_tables(const LabeledTree& first, Vertex fixed_root,
                                        const LabeledTree& second, const WeightScheme& scheme,
                                        EngineStats* stats) {
  UnrootedEngine engine(first, fixed_root, second, scheme, stats);
  return engine.run();
}

MappedTopBest best_mapped_top(const ContextTable& table) {
  MappedTopBest best;
  for (int ctx = 0; ctx < table.context_count(); ++ctx) {
    for (Vertex u = 0; u < table.size_first(); ++u) {
      Weight w = table.mapped(u, ctx);
      if (w > best.weight) {
        best.weight = w;
        best.u = u;
        best.ctx = ctx;
      }
    }
  }
  return best;
}

SkippedTopBest best_skipped_top(const ContextTable& table, const RootedView& first_view,
                                const LabeledTree& second, const WeightScheme& scheme) {
  SkippedTopBest best;
  if (scheme.forbids_skips()) return best;
  const int n1 = first_view.tree->size();
  std::vector<Weight> col_v, col_w;
  for (Vertex u = 0; u < n1; ++u) {
    const auto& cu = first_view.children[u];
    if (cu.size() < 2) continue;
    col_v.resize(cu.size());
    col_w.resize(cu.size());
    for (const auto& e : second.edges()) {
      int ctx_v = table.context_of(e.a, e.b);  // subtree of e.a away from e.b
      int ctx_w = table.context_of(e.b, e.a);
      for (size_t i = 0; i < cu.size(); ++i) {
        col_v[i] = std::max(table.mapped(cu[i], ctx_v), table.skipped(cu[i], ctx_v));
        col_w[i] = std::max(table.mapped(cu[i], ctx_w), table.skipped(cu[i], ctx_w));
      }
      CardinalityTwoPick pick = best_cardinality_two_pick(col_v, col_w);
      if (is_neg_infinite(pick.weight)) continue;
      Weight w = pick.weight - scheme.penalty();
      if (w > best.weight) {
        best.weight = w;
        best.u = u;
        best.v = e.a;
        best.w = e.b;
        best.child_toward_v = cu[pick.first_row];
        best.child_toward_w = cu[pick.second_row];
      }
    }
  }
  return best;
}

namespace {

// Traces one side of a split-top embedding: the entry (b, v) of the rooted
// table for the second tree rooted at the far end of the split edge.
Embedding trace_split_side(const RootedView& first_view, const LabeledTree& second,
                           const WeightScheme& scheme, Vertex b, Vertex v, Vertex far_root) {
  RootedView second_view = root_at(second, far_root);
  DpTable dp = compute_dp_table(first_view, second_view, scheme, DpOptions{true});
  bool start_mapped = dp.mapped(b, v) >= dp.skipped(b, v);
  return trace_embedding(dp, first_view, second_view, b, v, start_mapped);
}

}  // namespace

Embedding lawecse_unrooted(const LabeledTree& first, const LabeledTree& second,
                           const WeightScheme& scheme, EngineStats* stats) {
  const Vertex fixed_root = 0;
  RootedView view1 = root_at(first, fixed_root);
  ContextTable table = compute_all_context_tables(first, fixed_root, second, scheme, stats);
  MappedTopBest anchored = best_mapped_top(table);
  SkippedTopBest split = best_skipped_top(table, view1, second, scheme);

  if (is_neg_infinite(anchored.weight) && is_neg_infinite(split.weight)) {
    return infeasible_embedding();
  }

  if (anchored.weight >= split.weight) {
    Vertex v = table.context_vertex(anchored.ctx);
    Vertex parent = table.context_parent(anchored.ctx);
    Vertex root2 = parent == kNoVertex ? v : parent;
    RootedView view2 = root_at(second, root2);
    DpTable dp = compute_dp_table(view1, view2, scheme, DpOptions{true});
    Embedding emb = trace_embedding(dp, view1, view2, anchored.u, v, true);
    emb.weight = anchored.weight;
    return emb;
  }

  Embedding side_v = trace_split_side(view1, second, scheme, split.child_toward_v, split.v,
                                      split.w);
  Embedding side_w = trace_split_side(view1, second, scheme, split.child_toward_w, split.w,
                                      split.v);
  Embedding emb;
  emb.feasible = true;
  emb.weight = split.weight;
  emb.pairs = side_v.pairs;
  emb.pairs.insert(emb.pairs.end(), side_w.pairs.begin(), side_w.pairs.end());
  std::sort(emb.pairs.begin(), emb.pairs.end());
  emb.skipped_first = side_v.skipped_first;
  emb.skipped_first.push_back(split.u);
  emb.skipped_first.insert(emb.skipped_first.end(), side_w.skipped_first.begin(),
                           side_w.skipped_first.end());
  emb.skipped_second = side_v.skipped_second;
  emb.skipped_second.insert(emb.skipped_second.end(), side_w.skipped_second.begin(),
                            side_w.skipped_second.end());
  std::sort(emb.skipped_first.begin(), emb.skipped_first.end());
  std::sort(emb.skipped_second.begin(), emb.skipped_second.end());
  emb.root_first = side_v.root_first;
  emb.root_second = side_v.root_second;
  return emb;
}

Embedding naive_unrooted(const LabeledTree& first, const LabeledTree& second,
                         const WeightScheme& scheme, EngineStats* stats) {
  std::vector<RootedView> views2;
  views2.reserve(second.size());
  for (Vertex b = 0; b < second.size(); ++b) views2.push_back(root_at(second, b));

  Weight best = kNegInfinity;
  Vertex best_a = kNoVertex, best_b = kNoVertex, best_u = kNoVertex, best_v = kNoVertex;
  for (Vertex a = 0; a < first.size(); ++a) {
    RootedView view1 = root_at(first, a);
    for (Vertex b = 0; b < second.size(); ++b) {
      DpTable dp = compute_dp_table(view1, views2[b], scheme, DpOptions{false}, stats);
      for (Vertex u = 0; u < first.size(); ++u) {
        for (Vertex v = 0; v < second.size(); ++v) {
          if (dp.mapped(u, v) > best) {
            best = dp.mapped(u, v);
            best_a = a;
            best_b = b;
            best_u = u;
            best_v = v;
          }
        }
      }
    }
  }
  if (is_neg_infinite(best)) return infeasible_embedding();
  RootedView view1 = root_at(first, best_a);
  DpTable dp = compute_dp_table(view1, views2[best_b], scheme, DpOptions{true});
  return trace_embedding(dp, view1, views2[best_b], best_u, best_v, true);
}

}  // namespace lawecse
