#include "lawecse/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace lawecse {

namespace {

// Nearest mapped strict ancestor per mapped vertex, kNoVertex at the top.
std::map<Vertex, Vertex> nearest_mapped_ancestors(const RootedView& view,
                                                  const std::vector<Vertex>& mapped) {
  std::vector<char> is_mapped(view.tree->size(), 0);
  for (Vertex v : mapped) is_mapped[v] = 1;
  std::map<Vertex, Vertex> up;
  for (Vertex v : mapped) {
    Vertex a = v;
    while (a != view.root) {
      a = view.parent[a];
      if (is_mapped[a]) break;
    }
    up[v] = (a != v && is_mapped[a]) ? a : kNoVertex;
  }
  return up;
}

// Child of ancestor `a` whose subtree contains `v`.
Vertex step_toward(const RootedView& view, Vertex a, Vertex v) {
  Vertex c = v;
  while (view.parent[c] != a) c = view.parent[c];
  return c;
}

ValidityReport check_under_roots(const LabeledTree& first, const LabeledTree& second,
                                 const Embedding& emb, const RootedView& view1,
                                 const RootedView& view2) {
  ValidityReport report;
  if (emb.pairs.empty()) {
    report.reason = "empty mapping: an embeddable subtree has at least one vertex";
    return report;
  }
  std::map<Vertex, Vertex> forward, backward;
  for (const auto& [x, y] : emb.pairs) {
    if (x < 0 || x >= first.size() || y < 0 || y >= second.size()) {
      report.reason = "pair references a vertex outside the trees";
      return report;
    }
    if (!forward.emplace(x, y).second) {
      report.reason = "vertex '" + first.id(x) + "' is mapped twice";
      return report;
    }
    if (!backward.emplace(y, x).second) {
      report.reason = "vertex '" + second.id(y) + "' is mapped twice";
      return report;
    }
  }
  std::vector<Vertex> mapped1, mapped2;
  for (const auto& [x, y] : emb.pairs) {
    mapped1.push_back(x);
    mapped2.push_back(y);
  }
  auto up1 = nearest_mapped_ancestors(view1, mapped1);
  auto up2 = nearest_mapped_ancestors(view2, mapped2);

  int tops = 0;
  for (const auto& [x, y] : emb.pairs) {
    Vertex ax = up1[x];
    Vertex ay = up2[y];
    if (ax == kNoVertex && ay == kNoVertex) {
      ++tops;
      continue;
    }
    if (ax == kNoVertex || ay == kNoVertex || forward[ax] != ay) {
      report.reason = "ancestor structure disagrees at pair (" + first.id(x) + ", " +
                      second.id(y) + ")";
      return report;
    }
  }
  if (tops != 1) {
    report.reason = "mapping does not hang below a single pair (found " + std::to_string(tops) +
                    " top pairs)";
    return report;
  }

  // Children of the same embedded vertex must be reached through pairwise
  // distinct child subtrees; otherwise their paths would share more than the
  // endpoint.
  auto check_branches = [&](const LabeledTree& tree, const RootedView& view,
                            std::map<Vertex, Vertex>& up) -> bool {
    std::map<Vertex, std::vector<Vertex>> first_steps;
    for (const auto& [v, a] : up) {
      if (a == kNoVertex) continue;
      Vertex step = step_toward(view, a, v);
      auto& steps = first_steps[a];
      if (std::find(steps.begin(), steps.end(), step) != steps.end()) {
        report.reason = "paths from '" + tree.id(a) + "' to two embedded children share vertex '" +
                        tree.id(step) + "'";
        return false;
      }
      steps.push_back(step);
    }
    return true;
  };
  if (!check_branches(first, view1, up1)) return report;
  if (!check_branches(second, view2, up2)) return report;

  report.valid = true;
  return report;
}

}  // namespace

ValidityReport is_valid_embedding(const LabeledTree& first, const LabeledTree& second,
                                  const Embedding& emb, Vertex root_first,
                                  Vertex root_second) {
  if (root_first != kNoVertex && root_second != kNoVertex) {
    return check_under_roots(first, second, emb, root_at(first, root_first),
                             root_at(second, root_second));
  }
  ValidityReport last;
  for (Vertex a = 0; a < first.size(); ++a) {
    RootedView view1 = root_at(first, a);
    for (Vertex b = 0; b < second.size(); ++b) {
      last = check_under_roots(first, second, emb, view1, root_at(second, b));
      if (last.valid) return last;
    }
  }
  if (last.reason.empty()) last.reason = "no root pair admits this mapping";
  return last;
}

Weight weight_of_embedding(const LabeledTree& first, const LabeledTree& second,
                           const Embedding& emb, const WeightScheme& scheme,
                           Vertex root_first, Vertex root_second) {
  ValidityReport report = is_valid_embedding(first, second, emb, root_first, root_second);
  if (!report.valid) throw InputError("invalid embedding: " + report.reason);
  RootedView view1 = root_at(first, root_first);
  RootedView view2 = root_at(second, root_second);

  std::vector<Vertex> mapped1, mapped2;
  std::map<Vertex, Vertex> forward;
  for (const auto& [x, y] : emb.pairs) {
    mapped1.push_back(x);
    mapped2.push_back(y);
    forward[x] = y;
  }
  auto up1 = nearest_mapped_ancestors(view1, mapped1);

  Weight total = 0;
  for (const auto& [x, y] : emb.pairs) {
    total += scheme.vertex_weight(first.vertex_label(x), second.vertex_label(y));
  }
  for (const auto& [x, y] : emb.pairs) {
    Vertex ax = up1[x];
    if (ax == kNoVertex) continue;
    Vertex ay = forward[ax];
    int len1 = view1.depth[x] - view1.depth[ax];
    int len2 = view2.depth[y] - view2.depth[ay];
    if (len1 == 1 && len2 == 1) {
      total += scheme.edge_weight(first.edge_label(ax, x), second.edge_label(ay, y));
    } else if (scheme.forbids_skips()) {
      return kNegInfinity;
    } else {
      total -= scheme.penalty() * (len1 + len2 - 2);
    }
  }
  return total;
}

void annotate_skipped(const LabeledTree& first, const LabeledTree& second, Embedding& emb,
                      Vertex root_first, Vertex root_second) {
  RootedView view1 = root_at(first, root_first);
  RootedView view2 = root_at(second, root_second);
  std::vector<Vertex> mapped1, mapped2;
  std::map<Vertex, Vertex> forward;
  for (const auto& [x, y] : emb.pairs) {
    mapped1.push_back(x);
    mapped2.push_back(y);
    forward[x] = y;
  }
  auto up1 = nearest_mapped_ancestors(view1, mapped1);
  emb.skipped_first.clear();
  emb.skipped_second.clear();
  for (const auto& [x, y] : emb.pairs) {
    Vertex ax = up1[x];
    if (ax == kNoVertex) continue;
    for (Vertex w = view1.parent[x]; w != ax; w = view1.parent[w]) {
      emb.skipped_first.push_back(w);
    }
    for (Vertex w = view2.parent[y]; w != forward[ax]; w = view2.parent[w]) {
      emb.skipped_second.push_back(w);
    }
  }
  std::sort(emb.skipped_first.begin(), emb.skipped_first.end());
  std::sort(emb.skipped_second.begin(), emb.skipped_second.end());
}

namespace {

// Exhaustive enumeration of all embeddings rooted at a fixed top pair.
// A frame holds one mapped pair and walks over the injective assignments of
// its first-tree branches to second-tree branches; assigning a branch pair
// picks any descendant pair inside the two subtrees as the next mapped pair
// and opens a frame for it. Weights accumulate as pairs are added, so a
// completed agenda is a completed embedding.
class Enumerator {
 public:
  Enumerator(const LabeledTree& first, const LabeledTree& second, const WeightScheme& scheme,
             const RootedView& view1, const RootedView& view2, OracleOutcome& out,
             const std::function<void(const Embedding&)>& hook)
      : t1_(first), t2_(second), scheme_(scheme), view1_(view1), view2_(view2), out_(out),
        hook_(hook) {
    subtree1_ = collect_subtrees(view1_);
    subtree2_ = collect_subtrees(view2_);
  }

  void run(Vertex top1, Vertex top2) {
    acc_ = scheme_.vertex_weight(t1_.vertex_label(top1), t2_.vertex_label(top2));
    pairs_.assign(1, {top1, top2});
    agenda_.assign(1, Frame{top1, top2, 0, 0});
    step();
  }

 private:
  struct Frame {
    Vertex x;
    Vertex y;
    size_t branch;       // next first-tree branch to place
    std::uint32_t used;  // second-tree branches already taken
  };

  static std::vector<std::vector<Vertex>> collect_subtrees(const RootedView& view) {
    std::vector<std::vector<Vertex>> sub(view.tree->size());
    for (Vertex v : view.postorder) {
      sub[v].push_back(v);
      for (Vertex c : view.children[v]) {
        sub[v].insert(sub[v].end(), sub[c].begin(), sub[c].end());
      }
    }
    return sub;
  }

  void record() {
    ++out_.enumerated;
    if (hook_) {
      Embedding emb;
      emb.feasible = true;
      emb.weight = acc_;
      emb.pairs = pairs_;
      std::sort(emb.pairs.begin(), emb.pairs.end());
      emb.root_first = pairs_.front().first;
      emb.root_second = pairs_.front().second;
      hook_(emb);
    }
    if (acc_ > out_.weight) {
      out_.weight = acc_;
      out_.best.feasible = true;
      out_.best.weight = acc_;
      out_.best.pairs = pairs_;
      std::sort(out_.best.pairs.begin(), out_.best.pairs.end());
      out_.best.root_first = pairs_.front().first;
      out_.best.root_second = pairs_.front().second;
    }
  }

  void step() {
    if (agenda_.empty()) {
      record();
      return;
    }
    Frame frame = agenda_.back();
    const auto& branches1 = view1_.children[frame.x];
    const auto& branches2 = view2_.children[frame.y];

    if (frame.branch == branches1.size()) {
      agenda_.pop_back();
      step();
      agenda_.push_back(frame);
      return;
    }

    // Leave this branch unused.
    agenda_.back().branch++;
    step();
    agenda_.back().branch--;

    // Or assign it to a free second-tree branch and choose the next mapped
    // pair inside the two subtrees.
    Vertex bx = branches1[frame.branch];
    for (size_t j = 0; j < branches2.size(); ++j) {
      if (frame.used & (1u << j)) continue;
      Vertex by = branches2[j];
      for (Vertex x2 : subtree1_[bx]) {
        for (Vertex y2 : subtree2_[by]) {
          Weight delta = branch_weight(frame.x, frame.y, x2, y2) +
                         scheme_.vertex_weight(t1_.vertex_label(x2), t2_.vertex_label(y2));
          agenda_.back().branch++;
          agenda_.back().used |= (1u << j);
          agenda_.push_back(Frame{x2, y2, 0, 0});
          pairs_.emplace_back(x2, y2);
          Weight saved = acc_;
          acc_ += delta;

          step();

          acc_ = saved;
          pairs_.pop_back();
          agenda_.pop_back();
          agenda_.back().used &= ~(1u << j);
          agenda_.back().branch--;
        }
      }
    }
  }

  Weight branch_weight(Vertex x, Vertex y, Vertex x2, Vertex y2) const {
    int len1 = view1_.depth[x2] - view1_.depth[x];
    int len2 = view2_.depth[y2] - view2_.depth[y];
    if (len1 == 1 && len2 == 1) {
      return scheme_.edge_weight(t1_.edge_label(x, x2), t2_.edge_label(y, y2));
    }
    if (scheme_.forbids_skips()) return kNegInfinity;
    return -scheme_.penalty() * (len1 + len2 - 2);
  }

  const LabeledTree& t1_;
  const LabeledTree& t2_;
  const WeightScheme& scheme_;
  const RootedView& view1_;
  const RootedView& view2_;
  OracleOutcome& out_;
  const std::function<void(const Embedding&)>& hook_;
  std::vector<std::vector<Vertex>> subtree1_, subtree2_;
  std::vector<Frame> agenda_;
  std::vector<std::pair<Vertex, Vertex>> pairs_;
  Weight acc_ = 0;
};

}  // namespace

OracleOutcome oracle_best(const LabeledTree& first, const LabeledTree& second,
                          const WeightScheme& scheme, const OracleOptions& options) {
  if (first.size() > options.size_cap || second.size() > options.size_cap) {
    throw InputError("oracle size cap exceeded (" + std::to_string(options.size_cap) + ")");
  }
  OracleOutcome out;
  switch (options.mode) {
    case SolveMode::kRooted: {
      if (options.root_first == kNoVertex || options.root_second == kNoVertex) {
        throw InputError("rooted oracle requires both roots");
      }
      RootedView view1 = root_at(first, options.root_first);
      RootedView view2 = root_at(second, options.root_second);
      Enumerator e(first, second, scheme, view1, view2, out, options.on_embedding);
      for (Vertex x = 0; x < first.size(); ++x) {
        for (Vertex y = 0; y < second.size(); ++y) e.run(x, y);
      }
      break;
    }
    case SolveMode::kRootToRoot: {
      if (options.root_first == kNoVertex || options.root_second == kNoVertex) {
        throw InputError("root-to-root oracle requires both roots");
      }
      RootedView view1 = root_at(first, options.root_first);
      RootedView view2 = root_at(second, options.root_second);
      Enumerator e(first, second, scheme, view1, view2, out, options.on_embedding);
      e.run(options.root_first, options.root_second);
      break;
    }
    case SolveMode::kUnrooted: {
      // Every embedding is root-to-root once both trees are rooted at its
      // top pair, so trying all root pairs root-to-root is exhaustive.
      for (Vertex a = 0; a < first.size(); ++a) {
        RootedView view1 = root_at(first, a);
        for (Vertex b = 0; b < second.size(); ++b) {
          RootedView view2 = root_at(second, b);
          Enumerator e(first, second, scheme, view1, view2, out, options.on_embedding);
          e.run(a, b);
        }
      }
      break;
    }
  }
  if (out.weight > kNegInfinity && out.best.feasible) {
    annotate_skipped(first, second, out.best, out.best.root_first, out.best.root_second);
  } else {
    out.best = infeasible_embedding();
    out.weight = kNegInfinity;
  }
  return out;
}

}  // namespace lawecse
