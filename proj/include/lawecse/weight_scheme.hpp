#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lawecse/labeled_tree.hpp"
#include "lawecse/weights.hpp"

namespace lawecse {

// Label-pair weight function plus the per-skipped-vertex distance penalty.
// Pairs are ordered (first-tree label, second-tree label); there is no
// implicit symmetry. A penalty of +infinity forbids skipping entirely, which
// turns the solvers into maximum-common-subtree mode.
class WeightScheme {
 public:
  // Parses the line-based weights format:
  //   vpair <a> <b> <w>     epair <a> <b> <w>
  //   vdefault <w>          edefault <w>        penalty <w>
  // where <w> is a decimal, "inf", or "-inf". Later lines override earlier
  // ones. Unset fields default to: vdefault -inf, edefault 0, penalty 0.
  static WeightScheme parse(std::string_view text);

  Weight vertex_weight(std::string_view a, std::string_view b) const;
  Weight edge_weight(std::string_view a, std::string_view b) const;

  Weight penalty() const { return penalty_; }
  bool forbids_skips() const { return is_pos_infinite(penalty_); }

  Weight vertex_default() const { return vertex_default_; }
  Weight edge_default() const { return edge_default_; }

  void set_vertex_pair(std::string a, std::string b, Weight w);
  void set_edge_pair(std::string a, std::string b, Weight w);
  void set_vertex_default(Weight w);
  void set_edge_default(Weight w);
  void set_penalty(Weight p);

  std::string serialize() const;

 private:
  std::map<std::pair<std::string, std::string>, Weight> vertex_pairs_;
  std::map<std::pair<std::string, std::string>, Weight> edge_pairs_;
  Weight vertex_default_ = kNegInfinity;
  Weight edge_default_ = 0;
  Weight penalty_ = 0;
};

// Weight lookups compiled to dense matrices over the interned label ids of a
// specific tree pair, so the inner DP loops never touch strings.
class PairWeightCache {
 public:
  PairWeightCache(const LabeledTree& first, const LabeledTree& second,
                  const WeightScheme& scheme);

  Weight vertex(int label1, int label2) const { return vertex_[index(label1, label2)]; }
  Weight edge(int label1, int label2) const { return edge_[index(label1, label2)]; }
  Weight penalty() const { return penalty_; }
  bool forbids_skips() const { return forbids_skips_; }

 private:
  size_t index(int l1, int l2) const { return static_cast<size_t>(l1) * cols_ + l2; }
  size_t cols_;
  std::vector<Weight> vertex_;
  std::vector<Weight> edge_;
  Weight penalty_;
  bool forbids_skips_;
};

}  // namespace lawecse
