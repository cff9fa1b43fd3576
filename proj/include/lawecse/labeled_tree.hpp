#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lawecse/weights.hpp"

namespace lawecse {

using Vertex = int;
inline constexpr Vertex kNoVertex = -1;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable vertex- and edge-labeled tree. Vertices carry external string ids
// and dense internal indices assigned in declaration order; labels are
// interned into a shared string table so the engines can work on ids.
class LabeledTree {
 public:
  struct Edge {
    Vertex a;
    Vertex b;
    int label_id;
  };

  // Parses the line-based tree format:
  //   # comment
  //   v <id> <label>
  //   e <id1> <id2> [<label>]        (edge label defaults to "-")
  // Throws InputError with a line number on malformed input, duplicate ids,
  // unknown endpoints, self loops, cycles, and disconnected input.
  static LabeledTree parse(std::string_view text);

  // Programmatic construction; runs the same validation as parse().
  static LabeledTree build(
      const std::vector<std::pair<std::string, std::string>>& vertices,
      const std::vector<std::tuple<std::string, std::string, std::string>>& edges);

  int size() const { return static_cast<int>(ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& id(Vertex v) const { return ids_[v]; }
  Vertex index_of(std::string_view id) const;

  const std::string& vertex_label(Vertex v) const { return labels_[vertex_label_id_[v]]; }
  int vertex_label_id(Vertex v) const { return vertex_label_id_[v]; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  int max_degree() const;

  // Label of the edge {u, v}; u and v must be adjacent.
  int edge_label_id(Vertex u, Vertex v) const;
  const std::string& edge_label(Vertex u, Vertex v) const { return labels_[edge_label_id(u, v)]; }

  const std::vector<Edge>& edges() const { return edges_; }

  int label_count() const { return static_cast<int>(labels_.size()); }
  const std::string& label_text(int label_id) const { return labels_[label_id]; }

  std::string serialize() const;

 private:
  LabeledTree() = default;
  void add_vertex(std::string id, std::string label, int line);
  void add_edge(std::string_view id1, std::string_view id2, std::string label, int line);
  void validate(int line_of_last_edge) const;
  int intern(std::string label);

  std::vector<std::string> ids_;
  std::vector<int> vertex_label_id_;
  std::vector<Edge> edges_;                        // declaration order
  std::vector<std::vector<Vertex>> adjacency_;     // sorted by vertex index
  std::vector<std::vector<int>> adjacency_label_;  // aligned with adjacency_
  std::vector<std::string> labels_;
};

// Rooted view of a tree: parent/children maps plus a postorder traversal.
// Child lists are ordered by vertex declaration index.
struct RootedView {
  const LabeledTree* tree = nullptr;
  Vertex root = kNoVertex;
  std::vector<Vertex> parent;                  // parent[root] == root
  std::vector<std::vector<Vertex>> children;
  std::vector<Vertex> postorder;               // children precede parents
  std::vector<int> depth;
};

RootedView root_at(const LabeledTree& tree, Vertex root);
RootedView root_at(const LabeledTree& tree, std::string_view root_id);

// A directed context identifies a rooted subtree of the tree: (v, parent w)
// is the subtree hanging off v away from w, shared by every root outside it;
// (v, kNoVertex) is the whole tree rooted at v.
struct DirectedContext {
  Vertex vertex;
  Vertex parent;  // kNoVertex for the root context
};

// All 2|E| + |V| contexts: one per directed edge, then one root context per
// vertex.
std::vector<DirectedContext> directed_contexts(const LabeledTree& tree);

}  // namespace lawecse
