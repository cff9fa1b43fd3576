#include "lawecse/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lawecse/matching.hpp"
#include "lawecse/oracle.hpp"
#include "lawecse/random_trees.hpp"
#include "lawecse/rooted_dp.hpp"
#include "lawecse/unrooted_dp.hpp"

namespace lawecse {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Weights are printed with 12 significant digits.
json weight_json(Weight w) {
  if (is_neg_infinite(w)) return json("-inf");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", w);
  return json(std::strtod(buf, nullptr));
}

struct SolveFlags {
  std::string tree1_path, tree2_path, weights_path;
  std::string root1, root2;
  double min_weight = -std::numeric_limits<double>::infinity();
  bool no_mapping = false;
  std::uint64_t seed = 0;
  std::string oracle_mode = "unrooted";
  int oracle_cap = 8;
};

void add_common_flags(CLI::App* cmd, SolveFlags& flags, bool with_roots) {
  cmd->add_option("--tree1", flags.tree1_path, "first tree file")->required();
  cmd->add_option("--tree2", flags.tree2_path, "second tree file")->required();
  cmd->add_option("--weights", flags.weights_path, "weights file")->required();
  if (with_roots) {
    cmd->add_option("--root1", flags.root1, "root of the first tree (default: first vertex)");
    cmd->add_option("--root2", flags.root2, "root of the second tree (default: first vertex)");
  }
  cmd->add_option("--min-weight", flags.min_weight,
                  "report infeasible when the optimum is below this weight");
  cmd->add_flag("--no-mapping", flags.no_mapping, "omit mapping and skipped vertices");
  cmd->add_option("--seed", flags.seed, "accepted for interface parity; solving is deterministic");
}

int emit_result(const std::string& mode, const LabeledTree& t1, const LabeledTree& t2,
                const Embedding& emb, const EngineStats& stats, const SolveFlags& flags,
                std::ostream& out) {
  bool feasible = emb.feasible && emb.weight >= flags.min_weight;
  json result;
  result["mode"] = mode;
  result["weight"] = emb.feasible ? weight_json(emb.weight) : weight_json(kNegInfinity);
  if (feasible && !flags.no_mapping) {
    json mapping = json::array();
    for (const auto& [x, y] : emb.pairs) mapping.push_back({t1.id(x), t2.id(y)});
    result["mapping"] = mapping;
    json skipped = json::array();
    for (Vertex v : emb.skipped_first) skipped.push_back(t1.id(v));
    for (Vertex v : emb.skipped_second) skipped.push_back(t2.id(v));
    result["skipped"] = skipped;
  }
  if (feasible) {
    result["roots"] = {{"tree1", t1.id(emb.root_first)}, {"tree2", t2.id(emb.root_second)}};
  }
  result["stats"] = {{"table_entries", stats.table_entries},
                     {"matching_solves", stats.matching_solves}};
  out << result.dump() << '\n';
  return feasible ? 0 : 2;
}

int run_solve(const std::string& mode, const SolveFlags& flags, std::ostream& out) {
  LabeledTree t1 = LabeledTree::parse(read_file(flags.tree1_path));
  LabeledTree t2 = LabeledTree::parse(read_file(flags.tree2_path));
  WeightScheme scheme = WeightScheme::parse(read_file(flags.weights_path));
  EngineStats stats;
  Embedding emb;
  if (mode == "unrooted") {
    emb = lawecse_unrooted(t1, t2, scheme, &stats);
  } else {
    Vertex r1 = flags.root1.empty() ? 0 : t1.index_of(flags.root1);
    Vertex r2 = flags.root2.empty() ? 0 : t2.index_of(flags.root2);
    if (r1 == kNoVertex) throw InputError("unknown root id '" + flags.root1 + "'");
    if (r2 == kNoVertex) throw InputError("unknown root id '" + flags.root2 + "'");
    RootedView view1 = root_at(t1, r1);
    RootedView view2 = root_at(t2, r2);
    emb = mode == "rooted" ? lawecse_rooted(view1, view2, scheme, &stats)
                           : lawecse_root_to_root(view1, view2, scheme, &stats);
  }
  return emit_result(mode, t1, t2, emb, stats, flags, out);
}

int run_oracle(const SolveFlags& flags, std::ostream& out) {
  LabeledTree t1 = LabeledTree::parse(read_file(flags.tree1_path));
  LabeledTree t2 = LabeledTree::parse(read_file(flags.tree2_path));
  WeightScheme scheme = WeightScheme::parse(read_file(flags.weights_path));
  OracleOptions options;
  options.size_cap = flags.oracle_cap;
  if (flags.oracle_mode == "rooted") {
    options.mode = SolveMode::kRooted;
  } else if (flags.oracle_mode == "root-to-root") {
    options.mode = SolveMode::kRootToRoot;
  } else if (flags.oracle_mode == "unrooted") {
    options.mode = SolveMode::kUnrooted;
  } else {
    throw InputError("unknown oracle mode '" + flags.oracle_mode + "'");
  }
  if (options.mode != SolveMode::kUnrooted) {
    options.root_first = flags.root1.empty() ? 0 : t1.index_of(flags.root1);
    options.root_second = flags.root2.empty() ? 0 : t2.index_of(flags.root2);
    if (options.root_first == kNoVertex) throw InputError("unknown root id '" + flags.root1 + "'");
    if (options.root_second == kNoVertex) throw InputError("unknown root id '" + flags.root2 + "'");
  }
  OracleOutcome outcome = oracle_best(t1, t2, scheme, options);
  EngineStats stats;  // the oracle solves nothing incrementally
  return emit_result("oracle", t1, t2, outcome.best, stats, flags, out);
}

int run_matching(std::istream& in, std::ostream& out) {
  std::vector<std::vector<Weight>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<Weight> row;
    std::string token;
    while (ls >> token) {
      if (token == "-inf") {
        row.push_back(kNegInfinity);
      } else {
        try {
          row.push_back(std::stod(token));
        } catch (const std::exception&) {
          throw InputError("malformed matrix entry '" + token + "'");
        }
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  MatchingInstance instance(static_cast<int>(rows.size()),
                            rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != instance.cols) {
      throw InputError("matrix rows have differing lengths");
    }
    for (size_t j = 0; j < rows[i].size(); ++j) {
      instance.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
  }
  Matching m = solve_mwm(instance);
  json result;
  result["weight"] = weight_json(m.weight);
  json pairs = json::array();
  for (const auto& [i, j] : m.pairs) pairs.push_back({i, j});
  result["pairs"] = pairs;
  out << result.dump() << '\n';
  return 0;
}

struct BenchFlags {
  std::string sizes = "100,200,400";
  int max_degree = 5;
  int trials = 3;
  std::uint64_t seed = 1;
  std::string algo = "opt";
};

WeightScheme bench_scheme() {
  WeightScheme scheme;
  scheme.set_vertex_default(-0.5);
  scheme.set_edge_default(0);
  scheme.set_penalty(0.2);
  for (const char* l : {"a", "b", "c"}) scheme.set_vertex_pair(l, l, 1.0);
  return scheme;
}

int run_bench(const BenchFlags& flags, std::ostream& out) {
  if (flags.algo != "opt" && flags.algo != "naive") {
    throw InputError("unknown algo '" + flags.algo + "' (expected opt or naive)");
  }
  std::vector<int> sizes;
  std::stringstream ss(flags.sizes);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    try {
      v = std::stoi(item);
    } catch (const std::exception&) {
      throw InputError("malformed size '" + item + "'");
    }
    if (v < 1) throw InputError("sizes must be >= 1");
    sizes.push_back(v);
  }
  if (sizes.empty()) throw InputError("no sizes given");
  if (flags.trials < 1) throw InputError("trials must be >= 1");

  const std::vector<std::string> alphabet = {"a", "b", "c"};
  WeightScheme scheme = bench_scheme();
  out << "size_t1,size_t2,degree_cap,algo,trial,weight,wall_ms,matching_solves\n";
  for (int size : sizes) {
    for (int trial = 0; trial < flags.trials; ++trial) {
      SplitMix64 rng(flags.seed * 0x9e3779b97f4a7c15ULL + size * 1000003ULL + trial);
      LabeledTree t1 = random_tree(size, flags.max_degree, rng, alphabet);
      LabeledTree t2 = random_tree(size, flags.max_degree, rng, alphabet);
      EngineStats stats;
      auto start = std::chrono::steady_clock::now();
      Embedding emb = flags.algo == "opt" ? lawecse_unrooted(t1, t2, scheme, &stats)
                                          : naive_unrooted(t1, t2, scheme, &stats);
      auto stop = std::chrono::steady_clock::now();
      double ms = std::chrono::duration<double, std::milli>(stop - start).count();
      char wbuf[64];
      std::snprintf(wbuf, sizeof(wbuf), "%.12g", emb.weight);
      char tbuf[64];
      std::snprintf(tbuf, sizeof(tbuf), "%.3f", ms);
      out << size << ',' << size << ',' << flags.max_degree << ',' << flags.algo << ','
          << trial << ',' << (emb.feasible ? wbuf : "-inf") << ',' << tbuf << ','
          << stats.matching_solves << '\n';
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Largest weight common subtree embeddings between labeled trees"};
  app.require_subcommand(1);

  SolveFlags flags;
  auto* rooted = app.add_subcommand("rooted", "best embedding between two rooted trees");
  add_common_flags(rooted, flags, true);
  auto* r2r = app.add_subcommand("root-to-root", "best embedding mapping root to root");
  add_common_flags(r2r, flags, true);
  auto* unrooted = app.add_subcommand("unrooted", "best embedding over all root pairs");
  add_common_flags(unrooted, flags, false);
  auto* oracle = app.add_subcommand("oracle", "brute-force reference solver (small trees)");
  add_common_flags(oracle, flags, true);
  oracle->add_option("--mode", flags.oracle_mode, "rooted | root-to-root | unrooted");
  oracle->add_option("--cap", flags.oracle_cap, "size cap for enumeration (default 8)");

  auto* matching =
      app.add_subcommand("matching", "maximum-weight matching of a matrix read from stdin");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "random-tree scaling runs, CSV on stdout");
  bench_cmd->add_option("--sizes", bench.sizes, "comma-separated tree sizes");
  bench_cmd->add_option("--max-degree", bench.max_degree, "degree cap for random trees");
  bench_cmd->add_option("--trials", bench.trials, "trials per size");
  bench_cmd->add_option("--seed", bench.seed, "base seed");
  bench_cmd->add_option("--algo", bench.algo, "opt | naive");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (rooted->parsed()) return run_solve("rooted", flags, out);
    if (r2r->parsed()) return run_solve("root-to-root", flags, out);
    if (unrooted->parsed()) return run_solve("unrooted", flags, out);
    if (oracle->parsed()) return run_oracle(flags, out);
    if (matching->parsed()) return run_matching(in, out);
    if (bench_cmd->parsed()) return run_bench(bench, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: no subcommand given\n";
  return 1;
}

}  // namespace lawecse
