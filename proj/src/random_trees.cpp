#include "lawecse/random_trees.hpp"

#include <stdexcept>
#include <tuple>
#include <utility>

namespace lawecse {

LabeledTree random_tree(int size, int degree_cap, SplitMix64& rng,
                        const std::vector<std::string>& vertex_alphabet,
                        const std::vector<std::string>& edge_alphabet) {
  if (size < 1) throw InputError("random_tree: size must be >= 1");
  if (degree_cap < 2 && size > 2) throw InputError("random_tree: degree cap must be >= 2");

  std::vector<std::pair<std::string, std::string>> vertices;
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  std::vector<int> degree(size, 0);
  std::vector<int> candidates;
  for (int i = 0; i < size; ++i) {
    vertices.emplace_back("n" + std::to_string(i),
                          vertex_alphabet[rng.below(vertex_alphabet.size())]);
    if (i == 0) continue;
    candidates.clear();
    for (int j = 0; j < i; ++j) {
      if (degree[j] < degree_cap) candidates.push_back(j);
    }
    int parent = candidates[rng.below(candidates.size())];
    std::string label =
        edge_alphabet.empty() ? "-" : edge_alphabet[rng.below(edge_alphabet.size())];
    edges.emplace_back("n" + std::to_string(parent), "n" + std::to_string(i), std::move(label));
    ++degree[parent];
    ++degree[i];
  }
  return LabeledTree::build(vertices, edges);
}

}  // namespace lawecse
