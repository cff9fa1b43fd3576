#include "lawecse/labeled_tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace lawecse {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void fail(int line, const std::string& what) {
  if (line > 0) {
    throw InputError("line " + std::to_string(line) + ": " + what);
  }
  throw InputError(what);
}

// Union-find over vertex indices, used to reject cycles during parsing.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

int LabeledTree::intern(std::string label) {
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
    if (labels_[i] == label) return i;
  }
  labels_.push_back(std::move(label));
  return static_cast<int>(labels_.size()) - 1;
}

void LabeledTree::add_vertex(std::string id, std::string label, int line) {
  if (index_of(id) != kNoVertex) fail(line, "duplicate vertex id '" + id + "'");
  ids_.push_back(std::move(id));
  vertex_label_id_.push_back(intern(std::move(label)));
  adjacency_.emplace_back();
  adjacency_label_.emplace_back();
}

void LabeledTree::add_edge(std::string_view id1, std::string_view id2, std::string label,
                           int line) {
  Vertex a = index_of(id1);
  Vertex b = index_of(id2);
  if (a == kNoVertex) fail(line, "unknown endpoint '" + std::string(id1) + "'");
  if (b == kNoVertex) fail(line, "unknown endpoint '" + std::string(id2) + "'");
  if (a == b) fail(line, "self loop at '" + std::string(id1) + "'");
  int label_id = intern(std::move(label));
  edges_.push_back(Edge{a, b, label_id});
  adjacency_[a].push_back(b);
  adjacency_label_[a].push_back(label_id);
  adjacency_[b].push_back(a);
  adjacency_label_[b].push_back(label_id);
}

void LabeledTree::validate(int line_of_last_edge) const {
  if (ids_.empty()) fail(0, "empty tree: at least one vertex is required");
  DisjointSets sets(size());
  for (const Edge& e : edges_) {
    if (!sets.unite(e.a, e.b)) {
      fail(line_of_last_edge, "cycle detected: edge " + ids_[e.a] + "-" + ids_[e.b] +
                                  " closes a cycle");
    }
  }
  if (edge_count() != size() - 1) {
    fail(0, "disconnected: " + std::to_string(size()) + " vertices but only " +
                std::to_string(edge_count()) + " edges");
  }
}

LabeledTree LabeledTree::parse(std::string_view text) {
  LabeledTree tree;
  struct PendingEdge {
    std::string id1, id2, label;
    int line;
  };
  std::vector<PendingEdge> pending;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    ++line_no;
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;

    auto tokens = tokenize(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens[0] == "v") {
      if (tokens.size() != 3) fail(line_no, "malformed vertex line: expected 'v <id> <label>'");
      tree.add_vertex(std::move(tokens[1]), std::move(tokens[2]), line_no);
    } else if (tokens[0] == "e") {
      if (tokens.size() != 3 && tokens.size() != 4) {
        fail(line_no, "malformed edge line: expected 'e <id1> <id2> [<label>]'");
      }
      pending.push_back(PendingEdge{std::move(tokens[1]), std::move(tokens[2]),
                                    tokens.size() == 4 ? std::move(tokens[3]) : "-", line_no});
    } else {
      fail(line_no, "malformed line: unknown directive '" + tokens[0] + "'");
    }
  }
  int last_edge_line = 0;
  for (auto& e : pending) {
    tree.add_edge(e.id1, e.id2, std::move(e.label), e.line);
    last_edge_line = e.line;
  }
  tree.validate(last_edge_line);
  for (Vertex v = 0; v < tree.size(); ++v) {
    // Neighbor lists sorted by declaration index; keeps child order and with
    // it every tie-break downstream deterministic.
    std::vector<int> order(tree.adjacency_[v].size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return tree.adjacency_[v][x] < tree.adjacency_[v][y];
    });
    std::vector<Vertex> nb(order.size());
    std::vector<int> lb(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
      nb[i] = tree.adjacency_[v][order[i]];
      lb[i] = tree.adjacency_label_[v][order[i]];
    }
    tree.adjacency_[v] = std::move(nb);
    tree.adjacency_label_[v] = std::move(lb);
  }
  return tree;
}

LabeledTree LabeledTree::build(
    const std::vector<std::pair<std::string, std::string>>& vertices,
    const std::vector<std::tuple<std::string, std::string, std::string>>& edges) {
  std::ostringstream text;
  for (const auto& [id, label] : vertices) text << "v " << id << ' ' << label << '\n';
  for (const auto& [a, b, label] : edges) text << "e " << a << ' ' << b << ' ' << label << '\n';
  return parse(text.str());
}

Vertex LabeledTree::index_of(std::string_view id) const {
  for (Vertex v = 0; v < size(); ++v) {
    if (ids_[v] == id) return v;
  }
  return kNoVertex;
}

int LabeledTree::max_degree() const {
  int d = 0;
  for (const auto& nb : adjacency_) d = std::max(d, static_cast<int>(nb.size()));
  return d;
}

int LabeledTree::edge_label_id(Vertex u, Vertex v) const {
  const auto& nb = adjacency_[u];
  for (size_t i = 0; i < nb.size(); ++i) {
    if (nb[i] == v) return adjacency_label_[u][i];
  }
  throw InputError("edge_label_id: vertices '" + ids_[u] + "' and '" + ids_[v] +
                   "' are not adjacent");
}

std::string LabeledTree::serialize() const {
  std::ostringstream out;
  for (Vertex v = 0; v < size(); ++v) {
    out << "v " << ids_[v] << ' ' << vertex_label(v) << '\n';
  }
  for (const Edge& e : edges_) {
    out << "e " << ids_[e.a] << ' ' << ids_[e.b] << ' ' << labels_[e.label_id] << '\n';
  }
  return out.str();
}

RootedView root_at(const LabeledTree& tree, Vertex root) {
  if (root < 0 || root >= tree.size()) {
    throw InputError("unknown root vertex index " + std::to_string(root));
  }
  RootedView view;
  view.tree = &tree;
  view.root = root;
  view.parent.assign(tree.size(), kNoVertex);
  view.children.assign(tree.size(), {});
  view.depth.assign(tree.size(), 0);
  view.postorder.reserve(tree.size());
  view.parent[root] = root;

  // Iterative DFS; children are visited in neighbor (= declaration) order, so
  // the postorder is deterministic.
  std::vector<std::pair<Vertex, size_t>> stack;
  stack.emplace_back(root, 0);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& nb = tree.neighbors(v);
    bool descended = false;
    while (next < nb.size()) {
      Vertex w = nb[next++];
      if (w == view.parent[v] && w != v) continue;
      if (v == root && w == root) continue;
      view.parent[w] = v;
      view.depth[w] = view.depth[v] + 1;
      view.children[v].push_back(w);
      stack.emplace_back(w, 0);
      descended = true;
      break;
    }
    if (!descended && next >= nb.size()) {
      view.postorder.push_back(v);
      stack.pop_back();
    }
  }
  return view;
}

RootedView root_at(const LabeledTree& tree, std::string_view root_id) {
  Vertex root = tree.index_of(root_id);
  if (root == kNoVertex) throw InputError("unknown root id '" + std::string(root_id) + "'");
  return root_at(tree, root);
}

std::vector<DirectedContext> directed_contexts(const LabeledTree& tree) {
  std::vector<DirectedContext> contexts;
  contexts.reserve(2 * tree.edge_count() + tree.size());
  for (Vertex v = 0; v < tree.size(); ++v) {
    for (Vertex w : tree.neighbors(v)) contexts.push_back(DirectedContext{v, w});
  }
  for (Vertex v = 0; v < tree.size(); ++v) contexts.push_back(DirectedContext{v, kNoVertex});
  return contexts;
}

}  // namespace lawecse
