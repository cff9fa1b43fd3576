#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "lawecse/oracle.hpp"
#include "lawecse/rooted_dp.hpp"
#include "support.hpp"

using namespace lawecse;
using testsupport::close;
using testsupport::load_scheme;
using testsupport::load_tree;

TEST_CASE("two-chain into three-chain with an edge bonus") {
  LabeledTree t1 = load_tree("fig1b_t1.tree");
  LabeledTree t2 = load_tree("fig1b_t2.tree");
  WeightScheme scheme = load_scheme("fig1b.weights");
  RootedView v1 = root_at(t1, std::string_view("u1"));
  RootedView v2 = root_at(t2, std::string_view("v1"));

  DpTable table = compute_dp_table(v1, v2, scheme);
  // mapping both vertices one step down collects the (|,|) edge weight
  CHECK(table.mapped(t1.index_of("u1"), t2.index_of("v1")) == doctest::Approx(5));

  Embedding emb = lawecse_rooted(v1, v2, scheme);
  CHECK(emb.weight == doctest::Approx(5));

  // leaf against leaf: empty child sets
  CHECK(table.mapped(t1.index_of("u2"), t2.index_of("v3")) == doctest::Approx(1));
  CHECK(is_neg_infinite(table.skipped(t1.index_of("u2"), t2.index_of("v3"))));
}

TEST_CASE("skipping the middle vertex when it cannot be mapped") {
  LabeledTree t1 = load_tree("fig1b_t1.tree");
  LabeledTree t2 = load_tree("fig1b_t2_forced.tree");
  WeightScheme scheme = load_scheme("fig1b.weights");
  RootedView v1 = root_at(t1, std::string_view("u1"));
  RootedView v2 = root_at(t2, std::string_view("v1"));

  DpTable table = compute_dp_table(v1, v2, scheme);
  CHECK(table.mapped(t1.index_of("u1"), t2.index_of("v1")) == doctest::Approx(1.7));

  Embedding emb = lawecse_rooted(v1, v2, scheme);
  CHECK(emb.weight == doctest::Approx(1.7));
  REQUIRE(emb.pairs.size() == 2);
  CHECK(emb.pairs[0] == std::pair<Vertex, Vertex>{t1.index_of("u1"), t2.index_of("v1")});
  CHECK(emb.pairs[1] == std::pair<Vertex, Vertex>{t1.index_of("u2"), t2.index_of("v3")});
  CHECK(emb.skipped_second == std::vector<Vertex>{t2.index_of("v2")});
}

TEST_CASE("worked five-vertex pair, rooted at the drawn tops") {
  LabeledTree t1 = load_tree("fig2_t1.tree");
  LabeledTree t2 = load_tree("fig2_t2.tree");
  WeightScheme scheme = load_scheme("fig2.weights");

  Embedding emb = lawecse_rooted(root_at(t1, std::string_view("r")),
                                 root_at(t2, std::string_view("v")), scheme);
  CHECK(emb.weight == doctest::Approx(2.8));
  REQUIRE(emb.pairs.size() == 2);
  CHECK(emb.pairs[0] == std::pair<Vertex, Vertex>{t1.index_of("r"), t2.index_of("v")});
  CHECK(emb.pairs[1] == std::pair<Vertex, Vertex>{t1.index_of("u0"), t2.index_of("v0")});
  CHECK(emb.skipped_first == std::vector<Vertex>{t1.index_of("u")});
  CHECK(emb.skipped_second.empty());
}

TEST_CASE("worked five-vertex pair, rooted at the optimum") {
  LabeledTree t1 = load_tree("fig2_t1.tree");
  LabeledTree t2 = load_tree("fig2_t2.tree");
  WeightScheme scheme = load_scheme("fig2.weights");

  Embedding emb = lawecse_rooted(root_at(t1, std::string_view("u0")),
                                 root_at(t2, std::string_view("v0")), scheme);
  CHECK(emb.weight == doctest::Approx(3.6));
  REQUIRE(emb.pairs.size() == 2);
  // the four white leaves under v0 are interchangeable, so only u0 -> v0 is
  // forced; the second pair maps u3 to one of them at equal weight
  CHECK(emb.pairs[1] == std::pair<Vertex, Vertex>{t1.index_of("u0"), t2.index_of("v0")});
  CHECK(emb.pairs[0].first == t1.index_of("u3"));
  // two skipped vertices cost 0.4 in total
  std::vector<Vertex> expect_skipped = {t1.index_of("u"), t1.index_of("u2")};
  std::sort(expect_skipped.begin(), expect_skipped.end());
  std::vector<Vertex> got = emb.skipped_first;
  std::sort(got.begin(), got.end());
  CHECK(got == expect_skipped);
  CHECK(weight_of_embedding(t1, t2, emb, scheme, t1.index_of("u0"), t2.index_of("v0")) ==
        doctest::Approx(3.6));
  // the drawn optimum has the same weight
  Embedding drawn;
  drawn.feasible = true;
  drawn.pairs = {{t1.index_of("u3"), t2.index_of("v1")}, {t1.index_of("u0"), t2.index_of("v0")}};
  std::sort(drawn.pairs.begin(), drawn.pairs.end());
  CHECK(weight_of_embedding(t1, t2, drawn, scheme, t1.index_of("u0"), t2.index_of("v0")) ==
        doctest::Approx(3.6));
}

TEST_CASE("root-to-root at the drawn tops") {
  LabeledTree t1 = load_tree("fig2_t1.tree");
  LabeledTree t2 = load_tree("fig2_t2.tree");
  WeightScheme scheme = load_scheme("fig2.weights");
  Embedding emb = lawecse_root_to_root(root_at(t1, std::string_view("r")),
                                       root_at(t2, std::string_view("v")), scheme);
  CHECK(emb.weight == doctest::Approx(2.8));
  CHECK(emb.pairs.front() == std::pair<Vertex, Vertex>{t1.index_of("r"), t2.index_of("v")});
}

TEST_CASE("forbidden roots are infeasible root-to-root") {
  LabeledTree t1 = LabeledTree::parse("v a A\n");
  LabeledTree t2 = LabeledTree::parse("v b B\n");
  WeightScheme scheme = WeightScheme::parse("vdefault -inf\n");
  Embedding emb = lawecse_root_to_root(root_at(t1, 0), root_at(t2, 0), scheme);
  CHECK_FALSE(emb.feasible);
}

TEST_CASE("identical single-vertex trees") {
  LabeledTree t1 = LabeledTree::parse("v a X\n");
  LabeledTree t2 = LabeledTree::parse("v b X\n");
  WeightScheme scheme = WeightScheme::parse("vpair X X 1\n");
  Embedding emb = lawecse_rooted(root_at(t1, 0), root_at(t2, 0), scheme);
  CHECK(emb.weight == doctest::Approx(1));
  CHECK(emb.pairs.size() == 1);
}

TEST_CASE("single negative pair is allowed and reported") {
  LabeledTree t1 = LabeledTree::parse("v a X\n");
  LabeledTree t2 = LabeledTree::parse("v b Y\n");
  WeightScheme scheme = WeightScheme::parse("vpair X Y -2\n");
  Embedding emb = lawecse_rooted(root_at(t1, 0), root_at(t2, 0), scheme);
  CHECK(emb.feasible);
  CHECK(emb.weight == doctest::Approx(-2));
}

TEST_CASE("traceback from a leaf-leaf entry yields a single pair") {
  LabeledTree t1 = testsupport::load_tree("fig2_t1.tree");
  LabeledTree t2 = testsupport::load_tree("fig2_t2.tree");
  WeightScheme scheme = testsupport::load_scheme("fig2.weights");
  RootedView v1 = root_at(t1, std::string_view("r"));
  RootedView v2 = root_at(t2, std::string_view("v"));
  DpTable table = compute_dp_table(v1, v2, scheme);
  Embedding emb = trace_embedding(table, v1, v2, t1.index_of("u0"), t2.index_of("v1"));
  CHECK(emb.pairs.size() == 1);
  CHECK(emb.weight == doctest::Approx(2));
}

TEST_CASE("traceback requires a finite start") {
  LabeledTree t1 = LabeledTree::parse("v a X\n");
  LabeledTree t2 = LabeledTree::parse("v b Y\n");
  WeightScheme scheme = WeightScheme::parse("vdefault -inf\n");
  RootedView v1 = root_at(t1, 0);
  RootedView v2 = root_at(t2, 0);
  DpTable table = compute_dp_table(v1, v2, scheme);
  CHECK_THROWS_AS(trace_embedding(table, v1, v2, 0, 0), InputError);
}

TEST_CASE("traced embeddings re-evaluate to their table entries") {
  testsupport::SplitMix64 rng(401);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 200; ++trial) {
    LabeledTree t1 = testsupport::random_labeled_tree(1 + static_cast<int>(rng.below(7)), 3, rng);
    LabeledTree t2 = testsupport::random_labeled_tree(1 + static_cast<int>(rng.below(7)), 3, rng);
    Weight penalties[] = {0, 0.3, kPosInfinity};
    WeightScheme scheme = testsupport::random_scheme(rng, penalties[trial % 3]);
    RootedView v1 = root_at(t1, static_cast<Vertex>(rng.below(t1.size())));
    RootedView v2 = root_at(t2, static_cast<Vertex>(rng.below(t2.size())));
    DpTable table = compute_dp_table(v1, v2, scheme);
    for (Vertex u = 0; u < t1.size(); ++u) {
      for (Vertex v = 0; v < t2.size(); ++v) {
        if (is_neg_infinite(table.mapped(u, v))) continue;
        Embedding emb = trace_embedding(table, v1, v2, u, v);
        CHECK(emb.weight == table.mapped(u, v));
        Weight recomputed = weight_of_embedding(t1, t2, emb, scheme, v1.root, v2.root);
        CAPTURE(trial);
        CHECK(close(recomputed, table.mapped(u, v)));
        ++checked;
      }
    }
  }
  CHECK(checked >= 200);
}

TEST_CASE("rooted solver equals the exhaustive oracle on small instances") {
  testsupport::SplitMix64 rng(403);
  for (int trial = 0; trial < 60; ++trial) {
    LabeledTree t1 = testsupport::random_labeled_tree(1 + static_cast<int>(rng.below(6)), 3, rng);
    LabeledTree t2 = testsupport::random_labeled_tree(1 + static_cast<int>(rng.below(6)), 3, rng);
    Weight penalties[] = {0, 0.3, kPosInfinity};
    WeightScheme scheme = testsupport::random_scheme(rng, penalties[trial % 3]);
    Vertex r1 = static_cast<Vertex>(rng.below(t1.size()));
    Vertex r2 = static_cast<Vertex>(rng.below(t2.size()));

    Embedding emb = lawecse_rooted(root_at(t1, r1), root_at(t2, r2), scheme);
    OracleOptions options;
    options.mode = SolveMode::kRooted;
    options.root_first = r1;
    options.root_second = r2;
    OracleOutcome oracle = oracle_best(t1, t2, scheme, options);
    CAPTURE(trial);
    CHECK(close(emb.feasible ? emb.weight : kNegInfinity, oracle.weight));

    Embedding r2r = lawecse_root_to_root(root_at(t1, r1), root_at(t2, r2), scheme);
    options.mode = SolveMode::kRootToRoot;
    OracleOutcome oracle_r2r = oracle_best(t1, t2, scheme, options);
    CHECK(close(r2r.feasible ? r2r.weight : kNegInfinity, oracle_r2r.weight));
  }
}

TEST_CASE("optimal weight is non-increasing in the penalty") {
  testsupport::SplitMix64 rng(409);
  for (int trial = 0; trial < 30; ++trial) {
    LabeledTree t1 = testsupport::random_labeled_tree(2 + static_cast<int>(rng.below(6)), 3, rng);
    LabeledTree t2 = testsupport::random_labeled_tree(2 + static_cast<int>(rng.below(6)), 3, rng);
    WeightScheme scheme = testsupport::random_scheme(rng, 0);
    Vertex r1 = static_cast<Vertex>(rng.below(t1.size()));
    Vertex r2 = static_cast<Vertex>(rng.below(t2.size()));
    Weight previous = kPosInfinity;
    for (Weight p : {0.0, 0.1, 0.5, 2.0, kPosInfinity}) {
      scheme.set_penalty(p);
      Embedding emb = lawecse_rooted(root_at(t1, r1), root_at(t2, r2), scheme);
      Weight w = emb.feasible ? emb.weight : kNegInfinity;
      CHECK(w <= previous + 1e-9);
      previous = w;
    }
  }
}

TEST_CASE("label-equality scheme counts label-preserving mapped vertices") {
  LabeledTree t = load_tree("fig1a_t.tree");
  LabeledTree t1 = load_tree("fig1a_t1.tree");
  WeightScheme scheme = load_scheme("label_equality_p0.weights");
  Embedding emb = lawecse_rooted(root_at(t, std::string_view("t1")),
                                 root_at(t1, std::string_view("s1")), scheme);
  CHECK(emb.weight == doctest::Approx(5));
  CHECK(emb.pairs.size() == 5);
  for (const auto& [x, y] : emb.pairs) {
    CHECK(t.vertex_label(x) == t1.vertex_label(y));
  }
}
