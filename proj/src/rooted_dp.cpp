#include "lawecse/rooted_dp.hpp"

#include <algorithm>
#include <cassert>

namespace lawecse {

DpTable::DpTable(int n1, int n2, bool backpointers)
    : n1_(n1), n2_(n2), backpointers_(backpointers) {
  size_t total = static_cast<size_t>(n1) * n2;
  mapped_.assign(total, kNegInfinity);
  skipped_.assign(total, kNegInfinity);
  if (backpointers) {
    skip_via_.assign(total, SkipVia::kNone);
    skip_child_.assign(total, kNoVertex);
    bp_begin_.assign(total, 0);
    bp_count_.assign(total, 0);
  }
}

std::pair<const DpTable::ChildPair*, int> DpTable::matched_children(Vertex u, Vertex v) const {
  size_t i = index(u, v);
  return {bp_pool_.data() + bp_begin_[i], static_cast<int>(bp_count_[i])};
}

DpTable compute_dp_table(const RootedView& first, const RootedView& second,
                         const WeightScheme& scheme, const DpOptions& options,
                         EngineStats* stats) {
  const LabeledTree& t1 = *first.tree;
  const LabeledTree& t2 = *second.tree;
  DpTable table(t1.size(), t2.size(), options.keep_backpointers);
  PairWeightCache pw(t1, t2, scheme);
  const Weight penalty = pw.penalty();
  const bool no_skips = pw.forbids_skips();

  // Edge label toward each child, aligned with the child lists.
  auto child_edge_labels = [](const RootedView& view) {
    std::vector<std::vector<int>> labels(view.tree->size());
    for (Vertex v = 0; v < view.tree->size(); ++v) {
      labels[v].reserve(view.children[v].size());
      for (Vertex c : view.children[v]) labels[v].push_back(view.tree->edge_label_id(v, c));
    }
    return labels;
  };
  const auto edge_label1 = child_edge_labels(first);
  const auto edge_label2 = child_edge_labels(second);

  MatchingCounters counters;
  MatchingInstance instance;
  for (Vertex v : second.postorder) {
    const auto& cv = second.children[v];
    const int l2 = t2.vertex_label_id(v);
    for (Vertex u : first.postorder) {
      const auto& cu = first.children[u];
      const size_t entry = static_cast<size_t>(u) * t2.size() + v;
      if (stats) stats->table_entries += 2;

      // mapped(u, v) = wIso(u, v) + MWM over the child pairs, where a child
      // pair contributes either its skipped entry or its mapped entry plus
      // the weight of the two connecting edges.
      Weight wv = pw.vertex(t1.vertex_label_id(u), l2);
      if (is_neg_infinite(wv)) {
        table.mapped_[entry] = kNegInfinity;
      } else if (cu.empty() || cv.empty()) {
        table.mapped_[entry] = wv;
      } else {
        instance.rows = static_cast<int>(cu.size());
        instance.cols = static_cast<int>(cv.size());
        instance.w.assign(cu.size() * cv.size(), kNegInfinity);
        for (size_t bi = 0; bi < cu.size(); ++bi) {
          const Vertex b = cu[bi];
          for (size_t ci = 0; ci < cv.size(); ++ci) {
            const Vertex c = cv[ci];
            Weight cell = table.skipped(b, c);
            Weight m = table.mapped(b, c);
            if (!is_neg_infinite(m)) {
              Weight ew = pw.edge(edge_label1[u][bi], edge_label2[v][ci]);
              cell = std::max(cell, m + ew);
            }
            instance.at(static_cast<int>(bi), static_cast<int>(ci)) = cell;
          }
        }
        Matching m = solve_mwm(instance, &counters);
        table.mapped_[entry] = wv + m.weight;
        if (options.keep_backpointers) {
          table.bp_begin_[entry] = static_cast<std::uint32_t>(table.bp_pool_.size());
          table.bp_count_[entry] = static_cast<std::uint32_t>(m.pairs.size());
          for (const auto& [bi, ci] : m.pairs) {
            const Vertex b = cu[bi];
            const Vertex c = cv[ci];
            Weight sk = table.skipped(b, c);
            Weight mp = table.mapped(b, c);
            bool direct = false;
            if (!is_neg_infinite(mp)) {
              Weight ew = pw.edge(edge_label1[u][bi], edge_label2[v][ci]);
              direct = mp + ew >= sk;
            }
            table.bp_pool_.push_back(DpTable::ChildPair{b, c, direct});
          }
        }
      }

      // skipped(u, v): descend one step into either tree and pay the penalty
      // for the vertex left behind. Mapped-type descents are preferred on
      // ties so tracebacks terminate as early as possible.
      if (!no_skips) {
        Weight best = kNegInfinity;
        DpTable::SkipVia via = DpTable::SkipVia::kNone;
        Vertex arg = kNoVertex;
        for (Vertex b : cu) {
          if (table.mapped(b, v) > best) {
            best = table.mapped(b, v);
            via = DpTable::SkipVia::kFirstChildMapped;
            arg = b;
          }
        }
        for (Vertex c : cv) {
          if (table.mapped(u, c) > best) {
            best = table.mapped(u, c);
            via = DpTable::SkipVia::kSecondChildMapped;
            arg = c;
          }
        }
        for (Vertex b : cu) {
          if (table.skipped(b, v) > best) {
            best = table.skipped(b, v);
            via = DpTable::SkipVia::kFirstChildSkipped;
            arg = b;
          }
        }
        for (Vertex c : cv) {
          if (table.skipped(u, c) > best) {
            best = table.skipped(u, c);
            via = DpTable::SkipVia::kSecondChildSkipped;
            arg = c;
          }
        }
        if (!is_neg_infinite(best)) {
          table.skipped_[entry] = best - penalty;
          if (options.keep_backpointers) {
            table.skip_via_[entry] = via;
            table.skip_child_[entry] = arg;
          }
        }
      }
    }
  }
  if (stats) {
    stats->matching_solves += counters.solves;
    stats->matching_cells += counters.cells;
    stats->relaxations += counters.relaxations;
  }
  return table;
}

namespace {

void trace_into(const DpTable& table, const RootedView& first, const RootedView& second,
                Vertex u, Vertex v, bool mapped_entry, Embedding& out) {
  if (mapped_entry) {
    out.pairs.emplace_back(u, v);
    auto [children, count] = table.matched_children(u, v);
    for (int i = 0; i < count; ++i) {
      trace_into(table, first, second, children[i].child_first, children[i].child_second,
                 children[i].direct, out);
    }
    return;
  }
  switch (table.skip_via(u, v)) {
    case DpTable::SkipVia::kFirstChildMapped:
      out.skipped_first.push_back(u);
      trace_into(table, first, second, table.skip_child(u, v), v, true, out);
      break;
    case DpTable::SkipVia::kFirstChildSkipped:
      out.skipped_first.push_back(u);
      trace_into(table, first, second, table.skip_child(u, v), v, false, out);
      break;
    case DpTable::SkipVia::kSecondChildMapped:
      out.skipped_second.push_back(v);
      trace_into(table, first, second, u, table.skip_child(u, v), true, out);
      break;
    case DpTable::SkipVia::kSecondChildSkipped:
      out.skipped_second.push_back(v);
      trace_into(table, first, second, u, table.skip_child(u, v), false, out);
      break;
    case DpTable::SkipVia::kNone:
      assert(false && "skipped entry without a backpointer");
      break;
  }
}

}  // namespace

Embedding trace_embedding(const DpTable& table, const RootedView& first,
                          const RootedView& second, Vertex u, Vertex v, bool start_mapped) {
  if (!table.has_backpointers()) {
    throw InputError("trace_embedding requires a table computed with backpointers");
  }
  Weight value = start_mapped ? table.mapped(u, v) : table.skipped(u, v);
  if (is_neg_infinite(value)) {
    throw InputError("trace_embedding: start entry is -inf");
  }
  Embedding emb;
  emb.feasible = true;
  emb.weight = value;
  trace_into(table, first, second, u, v, start_mapped, emb);
  emb.root_first = emb.pairs.front().first;
  emb.root_second = emb.pairs.front().second;
  std::sort(emb.pairs.begin(), emb.pairs.end());
  return emb;
}

Embedding lawecse_rooted(const RootedView& first, const RootedView& second,
                         const WeightScheme& scheme, EngineStats* stats) {
  DpTable table = compute_dp_table(first, second, scheme, DpOptions{true}, stats);
  Weight best = kNegInfinity;
  Vertex best_u = kNoVertex, best_v = kNoVertex;
  for (Vertex u = 0; u < table.size_first(); ++u) {
    for (Vertex v = 0; v < table.size_second(); ++v) {
      if (table.mapped(u, v) > best) {
        best = table.mapped(u, v);
        best_u = u;
        best_v = v;
      }
    }
  }
  if (is_neg_infinite(best)) return infeasible_embedding();
  Embedding emb = trace_embedding(table, first, second, best_u, best_v, true);
  emb.root_first = first.root;
  emb.root_second = second.root;
  return emb;
}

Embedding lawecse_root_to_root(const RootedView& first, const RootedView& second,
                               const WeightScheme& scheme, EngineStats* stats) {
  DpTable table = compute_dp_table(first, second, scheme, DpOptions{true}, stats);
  if (is_neg_infinite(table.mapped(first.root, second.root))) return infeasible_embedding();
  Embedding emb = trace_embedding(table, first, second, first.root, second.root, true);
  emb.root_first = first.root;
  emb.root_second = second.root;
  return emb;
}

}  // namespace lawecse
