#pragma once

#include <cstdint>
#include <vector>

#include "lawecse/embedding.hpp"
#include "lawecse/labeled_tree.hpp"
#include "lawecse/matching.hpp"
#include "lawecse/weight_scheme.hpp"
#include "lawecse/weights.hpp"

namespace lawecse {

struct EngineStats {
  std::uint64_t table_entries = 0;
  std::uint64_t matching_solves = 0;
  std::uint64_t matching_cells = 0;
  std::uint64_t relaxations = 0;
  int max_solves_per_pair = 0;

  // Deterministic work proxy for scaling checks.
  std::uint64_t work() const { return table_entries + matching_cells + relaxations; }
};

struct DpOptions {
  bool keep_backpointers = true;
};

// Bottom-up table over subtree pairs. Each pair (u, v) holds two entries:
//   mapped(u, v)  — best embedding of the subtrees with u mapped to v;
//   skipped(u, v) — best embedding where u or v is skipped (penalty applied).
class DpTable {
 public:
  // How a skipped entry was obtained: which tree was descended into, and
  // whether the child entry is of mapped or skipped type.
  enum class SkipVia : std::uint8_t {
    kNone,
    kFirstChildMapped,
    kFirstChildSkipped,
    kSecondChildMapped,
    kSecondChildSkipped,
  };
  struct ChildPair {
    Vertex child_first;
    Vertex child_second;
    bool direct;  // both connecting paths have length 1, edge weight counted
  };

  DpTable(int n1, int n2, bool backpointers);

  int size_first() const { return n1_; }
  int size_second() const { return n2_; }
  bool has_backpointers() const { return backpointers_; }

  Weight mapped(Vertex u, Vertex v) const { return mapped_[index(u, v)]; }
  Weight skipped(Vertex u, Vertex v) const { return skipped_[index(u, v)]; }

  SkipVia skip_via(Vertex u, Vertex v) const { return skip_via_[index(u, v)]; }
  Vertex skip_child(Vertex u, Vertex v) const { return skip_child_[index(u, v)]; }
  std::pair<const ChildPair*, int> matched_children(Vertex u, Vertex v) const;

 private:
  friend DpTable compute_dp_table(const RootedView&, const RootedView&, const WeightScheme&,
                                  const DpOptions&, EngineStats*);
  size_t index(Vertex u, Vertex v) const { return static_cast<size_t>(u) * n2_ + v; }

  int n1_, n2_;
  bool backpointers_;
  std::vector<Weight> mapped_, skipped_;
  std::vector<SkipVia> skip_via_;
  std::vector<Vertex> skip_child_;
  std::vector<std::uint32_t> bp_begin_, bp_count_;
  std::vector<ChildPair> bp_pool_;
};

DpTable compute_dp_table(const RootedView& first, const RootedView& second,
                         const WeightScheme& scheme, const DpOptions& options = {},
                         EngineStats* stats = nullptr);

// Reconstructs the embedding behind a table entry. The table must have been
// computed with backpointers and the start entry must be finite (throws
// InputError otherwise). The returned weight is the table entry itself.
Embedding trace_embedding(const DpTable& table, const RootedView& first,
                          const RootedView& second, Vertex u, Vertex v,
                          bool start_mapped = true);

// Best embedding between the two rooted trees: maximum mapped(u, v) over all
// subtree pairs, with traceback. Infeasible when every pair is forbidden.
Embedding lawecse_rooted(const RootedView& first, const RootedView& second,
                         const WeightScheme& scheme, EngineStats* stats = nullptr);

// Best embedding mapping root to root: the mapped entry of the two roots.
Embedding lawecse_root_to_root(const RootedView& first, const RootedView& second,
                               const WeightScheme& scheme, EngineStats* stats = nullptr);

}  // namespace lawecse
