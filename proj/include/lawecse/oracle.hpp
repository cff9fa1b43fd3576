#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "lawecse/embedding.hpp"
#include "lawecse/labeled_tree.hpp"
#include "lawecse/weight_scheme.hpp"

namespace lawecse {

// Ground-truth checks and brute-force search, independent of the dynamic
// programming engines. Intended for small instances and tests.

struct ValidityReport {
  bool valid = false;
  std::string reason;
  explicit operator bool() const { return valid; }
};

// Checks that the pair list is a common subtree embedding under the given
// roots: injective, with consistent nearest-mapped-ancestor structure on
// both sides, and with the paths from a mapped vertex to the images of its
// embedded children leaving through pairwise distinct child subtrees. When
// no roots are given, all root pairs are tried.
ValidityReport is_valid_embedding(const LabeledTree& first, const LabeledTree& second,
                                  const Embedding& emb, Vertex root_first = kNoVertex,
                                  Vertex root_second = kNoVertex);

// Evaluates an embedding from its pair list alone: vertex pair weights, plus
// per embedded edge either the edge pair weight (both connecting paths of
// length one) or the penalty per inner path vertex. Throws InputError if the
// embedding is not valid under the given roots.
Weight weight_of_embedding(const LabeledTree& first, const LabeledTree& second,
                           const Embedding& emb, const WeightScheme& scheme,
                           Vertex root_first, Vertex root_second);

// Recomputes the inner path vertices of a valid embedding.
void annotate_skipped(const LabeledTree& first, const LabeledTree& second, Embedding& emb,
                      Vertex root_first, Vertex root_second);

enum class SolveMode { kRooted, kRootToRoot, kUnrooted };

struct OracleOptions {
  SolveMode mode = SolveMode::kUnrooted;
  Vertex root_first = kNoVertex;   // required for the rooted modes
  Vertex root_second = kNoVertex;
  int size_cap = 8;
  // Test hook, invoked with every enumerated embedding.
  std::function<void(const Embedding&)> on_embedding;
};

struct OracleOutcome {
  Weight weight = kNegInfinity;
  Embedding best;
  std::uint64_t enumerated = 0;
};

// Exhaustive maximum over all valid embeddings, enumerated by recursive
// extension. Throws InputError when a tree exceeds the size cap.
OracleOutcome oracle_best(const LabeledTree& first, const LabeledTree& second,
                          const WeightScheme& scheme, const OracleOptions& options);

}  // namespace lawecse
