#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lawecse/weight_scheme.hpp"
#include "support.hpp"

using namespace lawecse;

TEST_CASE("worked-example scheme") {
  WeightScheme s =
      WeightScheme::parse("vdefault 1\npenalty 0.2\nvpair yellow white -5\nvpair red white 2\n");
  CHECK(s.vertex_weight("white", "white") == doctest::Approx(1));
  CHECK(s.vertex_weight("yellow", "white") == doctest::Approx(-5));
  CHECK(s.vertex_weight("red", "white") == doctest::Approx(2));
  CHECK(s.penalty() == doctest::Approx(0.2));
  CHECK(s.edge_weight("-", "-") == doctest::Approx(0));
  CHECK_FALSE(s.forbids_skips());
}

TEST_CASE("edge pair lookups") {
  WeightScheme s = testsupport::load_scheme("fig1b.weights");
  CHECK(s.edge_weight("|", "|") == doctest::Approx(3));
  CHECK(s.edge_weight("|", "red|") == doctest::Approx(-1));
  CHECK(s.edge_weight("red|", "|") == doctest::Approx(0));  // ordered pairs, no symmetry
  CHECK(s.penalty() == doctest::Approx(0.3));
}

TEST_CASE("infinite penalty forbids skips") {
  WeightScheme s = WeightScheme::parse("penalty inf\n");
  CHECK(s.forbids_skips());
  CHECK(is_pos_infinite(s.penalty()));
}

TEST_CASE("forbidden pair weight") {
  WeightScheme s = WeightScheme::parse("vpair A B -inf\nvdefault 0\n");
  CHECK(is_neg_infinite(s.vertex_weight("A", "B")));
  CHECK(s.vertex_weight("B", "A") == doctest::Approx(0));
}

TEST_CASE("defaults when unspecified") {
  WeightScheme s = WeightScheme::parse("");
  CHECK(is_neg_infinite(s.vertex_weight("x", "y")));
  CHECK(s.edge_weight("x", "y") == doctest::Approx(0));
  CHECK(s.penalty() == doctest::Approx(0));
}

TEST_CASE("later lines override earlier ones") {
  WeightScheme s = WeightScheme::parse("vpair a b 1\nvpair a b 2\n");
  CHECK(s.vertex_weight("a", "b") == doctest::Approx(2));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH_AS(WeightScheme::parse("vpair a b\n"), doctest::Contains("line 1"),
                       InputError);
  CHECK_THROWS_WITH_AS(WeightScheme::parse("penalty -1\n"), doctest::Contains("penalty"),
                       InputError);
  CHECK_THROWS_AS(WeightScheme::parse("penalty -inf\n"), InputError);
  CHECK_THROWS_AS(WeightScheme::parse("vpair a b inf\n"), InputError);
  CHECK_THROWS_AS(WeightScheme::parse("vdefault inf\n"), InputError);
  CHECK_THROWS_AS(WeightScheme::parse("vpair a b 1.2.3\n"), InputError);
  CHECK_THROWS_AS(WeightScheme::parse("nonsense 1\n"), InputError);
}

TEST_CASE("serialize then parse preserves lookups") {
  testsupport::SplitMix64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    WeightScheme s = testsupport::random_scheme(rng, trial % 3 == 0 ? kPosInfinity : 0.25 * trial);
    WeightScheme back = WeightScheme::parse(s.serialize());
    for (const auto& a : testsupport::small_alphabet()) {
      for (const auto& b : testsupport::small_alphabet()) {
        CHECK(testsupport::close(back.vertex_weight(a, b), s.vertex_weight(a, b), 0));
        CHECK(testsupport::close(back.edge_weight(a, b), s.edge_weight(a, b), 0));
      }
    }
    CHECK(testsupport::close(back.vertex_weight("zz", "zz"), s.vertex_weight("zz", "zz"), 0));
    CHECK(testsupport::close(back.penalty(), s.penalty(), 0));
  }
}

TEST_CASE("pair weight cache agrees with string lookups") {
  testsupport::SplitMix64 rng(5);
  LabeledTree t1 = testsupport::random_labeled_tree(6, 3, rng);
  LabeledTree t2 = testsupport::random_labeled_tree(6, 3, rng);
  WeightScheme s = testsupport::random_scheme(rng, 0.5);
  PairWeightCache cache(t1, t2, s);
  for (Vertex u = 0; u < t1.size(); ++u) {
    for (Vertex v = 0; v < t2.size(); ++v) {
      CHECK(testsupport::close(cache.vertex(t1.vertex_label_id(u), t2.vertex_label_id(v)),
                               s.vertex_weight(t1.vertex_label(u), t2.vertex_label(v)), 0));
    }
  }
}
