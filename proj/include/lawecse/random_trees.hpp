#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lawecse/labeled_tree.hpp"

namespace lawecse {

// Small deterministic generator (splitmix64). The standard distributions are
// not pinned across library implementations, so benchmark and test streams
// draw through this instead.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Random tree by uniform attachment: vertex i joins a uniformly chosen
// earlier vertex that still has degree below the cap. Vertex and edge labels
// are drawn from the given alphabets ("-" edges when the edge alphabet is
// empty). Ids are n0, n1, ...
LabeledTree random_tree(int size, int degree_cap, SplitMix64& rng,
                        const std::vector<std::string>& vertex_alphabet,
                        const std::vector<std::string>& edge_alphabet = {});

}  // namespace lawecse
