#include "lawecse/weight_scheme.hpp"

#include <cstdlib>
#include <sstream>

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

Weight parse_weight(const std::string& token, int line) {
  if (token == "inf" || token == "+inf") return kPosInfinity;
  if (token == "-inf") return kNegInfinity;
  const char* begin = token.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end != begin + token.size() || token.empty()) {
    throw InputError("line " + std::to_string(line) + ": malformed weight '" + token + "'");
  }
  return value;
}

std::string weight_to_text(Weight w) {
  if (is_pos_infinite(w)) return "inf";
  if (is_neg_infinite(w)) return "-inf";
  std::ostringstream out;
  out.precision(17);
  out << w;
  return out.str();
}

}  // namespace

WeightScheme WeightScheme::parse(std::string_view text) {
  WeightScheme scheme;
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
    const std::string& kind = tokens[0];
    if (kind == "vpair" || kind == "epair") {
      if (tokens.size() != 4) {
        throw InputError("line " + std::to_string(line_no) + ": malformed line: expected '" +
                         kind + " <a> <b> <w>'");
      }
      Weight w = parse_weight(tokens[3], line_no);
      if (is_pos_infinite(w)) {
        throw InputError("line " + std::to_string(line_no) +
                         ": 'inf' is not a valid pair weight (only the penalty may be infinite)");
      }
      if (kind == "vpair") {
        scheme.vertex_pairs_[{tokens[1], tokens[2]}] = w;
      } else {
        scheme.edge_pairs_[{tokens[1], tokens[2]}] = w;
      }
    } else if (kind == "vdefault" || kind == "edefault") {
      if (tokens.size() != 2) {
        throw InputError("line " + std::to_string(line_no) + ": malformed line: expected '" +
                         kind + " <w>'");
      }
      Weight w = parse_weight(tokens[1], line_no);
      if (is_pos_infinite(w)) {
        throw InputError("line " + std::to_string(line_no) +
                         ": 'inf' is not a valid default pair weight");
      }
      if (kind == "vdefault") {
        scheme.vertex_default_ = w;
      } else {
        scheme.edge_default_ = w;
      }
    } else if (kind == "penalty") {
      if (tokens.size() != 2) {
        throw InputError("line " + std::to_string(line_no) +
                         ": malformed line: expected 'penalty <w>'");
      }
      Weight p = parse_weight(tokens[1], line_no);
      if (p < 0) {
        throw InputError("line " + std::to_string(line_no) + ": penalty must be >= 0 or inf");
      }
      scheme.penalty_ = p;
    } else {
      throw InputError("line " + std::to_string(line_no) + ": malformed line: unknown directive '" +
                       kind + "'");
    }
  }
  return scheme;
}

Weight WeightScheme::vertex_weight(std::string_view a, std::string_view b) const {
  auto it = vertex_pairs_.find({std::string(a), std::string(b)});
  return it == vertex_pairs_.end() ? vertex_default_ : it->second;
}

Weight WeightScheme::edge_weight(std::string_view a, std::string_view b) const {
  auto it = edge_pairs_.find({std::string(a), std::string(b)});
  return it == edge_pairs_.end() ? edge_default_ : it->second;
}

void WeightScheme::set_vertex_pair(std::string a, std::string b, Weight w) {
  if (is_pos_infinite(w)) throw InputError("'inf' is not a valid pair weight");
  vertex_pairs_[{std::move(a), std::move(b)}] = w;
}

void WeightScheme::set_edge_pair(std::string a, std::string b, Weight w) {
  if (is_pos_infinite(w)) throw InputError("'inf' is not a valid pair weight");
  edge_pairs_[{std::move(a), std::move(b)}] = w;
}

void WeightScheme::set_vertex_default(Weight w) {
  if (is_pos_infinite(w)) throw InputError("'inf' is not a valid default pair weight");
  vertex_default_ = w;
}

void WeightScheme::set_edge_default(Weight w) {
  if (is_pos_infinite(w)) throw InputError("'inf' is not a valid default pair weight");
  edge_default_ = w;
}

void WeightScheme::set_penalty(Weight p) {
  if (p < 0) throw InputError("penalty must be >= 0 or inf");
  penalty_ = p;
}

std::string WeightScheme::serialize() const {
  std::ostringstream out;
  out << "vdefault " << weight_to_text(vertex_default_) << '\n';
  out << "edefault " << weight_to_text(edge_default_) << '\n';
  out << "penalty " << weight_to_text(penalty_) << '\n';
  for (const auto& [pair, w] : vertex_pairs_) {
    out << "vpair " << pair.first << ' ' << pair.second << ' ' << weight_to_text(w) << '\n';
  }
  for (const auto& [pair, w] : edge_pairs_) {
    out << "epair " << pair.first << ' ' << pair.second << ' ' << weight_to_text(w) << '\n';
  }
  return out.str();
}

PairWeightCache::PairWeightCache(const LabeledTree& first, const LabeledTree& second,
                                 const WeightScheme& scheme)
    : cols_(second.label_count()),
      penalty_(scheme.penalty()),
      forbids_skips_(scheme.forbids_skips()) {
  size_t rows = first.label_count();
  vertex_.resize(rows * cols_);
  edge_.resize(rows * cols_);
  for (size_t l1 = 0; l1 < rows; ++l1) {
    for (size_t l2 = 0; l2 < cols_; ++l2) {
      vertex_[l1 * cols_ + l2] =
          scheme.vertex_weight(first.label_text(static_cast<int>(l1)),
                               second.label_text(static_cast<int>(l2)));
      edge_[l1 * cols_ + l2] = scheme.edge_weight(first.label_text(static_cast<int>(l1)),
                                                  second.label_text(static_cast<int>(l2)));
    }
  }
}

}  // namespace lawecse
