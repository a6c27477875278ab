#include <catch_amalgamated.hpp>

#include <random>

#include "forcing/cohen.hpp"

using namespace forcing;

namespace {

Condition random_condition(const CohenPoset& poset, std::mt19937& rng, std::size_t columns, std::size_t cells) {
  std::uniform_int_distribution<std::size_t> row(0, poset.rows() - 1), col(0, columns - 1);
  std::uniform_int_distribution<int> bit(0, 1);
  Condition p = poset.top();
  for (std::size_t i = 0; i < cells; ++i) {
    const Cell c{row(rng), col(rng)};
    if (!p.defines(c)) p = p.with(c, static_cast<std::uint8_t>(bit(rng)));
  }
  return p;
}

} // namespace

TEST_CASE("conditions are finite partial functions ordered by extension", "[cohen]") {
  const CohenPoset poset(2);
  const Condition top = poset.top();
  const Condition p = poset.condition({{{0, 0}, 1}});
  const Condition q = p.with({1, 3}, 0);
  CHECK(poset.leq(q, p));
  CHECK(poset.leq(p, top));
  CHECK_FALSE(poset.leq(p, q));
  CHECK(poset.compatible(p, q));
  CHECK_FALSE(poset.compatible(p, poset.condition({{{0, 0}, 0}})));
  CHECK(q.at({1, 3}) == std::uint8_t{0});
  CHECK_FALSE(q.defines({1, 2}));
  CHECK(merge(poset, p, poset.condition({{{1, 1}, 1}})).size() == 2);
  CHECK_THROWS_AS(merge(poset, p, poset.condition({{{0, 0}, 0}})), precondition_error);
  CHECK_THROWS(poset.condition({{{2, 0}, 1}}));
  CHECK_THROWS(poset.condition({{{0, 0}, 2}}));
  CHECK_THROWS(poset.condition({{{0, 0}, 1}, {{0, 0}, 0}}));
  CHECK_THROWS_AS(poset.leq(p, CohenPoset(3).top()), precondition_error);
  CHECK_THROWS_AS(CohenPoset(0), input_error);
}

TEST_CASE("separativity witnesses on random conditions", "[cohen]") {
  const CohenPoset poset(3);
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Condition x = random_condition(poset, rng, 4, 4);
    const Condition y = random_condition(poset, rng, 4, 4);
    if (poset.leq(y, x)) {
      CHECK_THROWS_AS(separativity_witness(poset, x, y), precondition_error);
      continue;
    }
    const Condition z = separativity_witness(poset, x, y);
    CHECK(poset.leq(z, y));
    CHECK_FALSE(poset.compatible(z, x));
  }
}

TEST_CASE("dense oracles refine into their sets", "[cohen]") {
  const CohenPoset poset(3);
  const GroundReal zeros({}, {0});
  const GroundReal alternating({1}, {0, 1});
  const std::vector<DenseOracle<Condition>> oracles{d_total(poset, 1, 2), d_distinct(poset, 0, 2),
                                                    d_avoid(poset, zeros, 1), d_avoid(poset, alternating, 0)};
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Condition p = random_condition(poset, rng, 5, 6);
    for (const auto& o : oracles) {
      const auto q = o.refine(p);
      REQUIRE(q);
      CHECK(poset.leq(*q, p));
      CHECK(o.member(*q));
      if (o.member(p)) CHECK(*q == p);
    }
  }
  CHECK_THROWS_AS(d_distinct(poset, 1, 1), input_error);
  CHECK_THROWS_AS(d_total(poset, 3, 0), input_error);
}

TEST_CASE("ground reals", "[cohen]") {
  const GroundReal f({1, 1}, {0, 1, 0});
  CHECK(f(0) == 1);
  CHECK(f(1) == 1);
  CHECK(f(2) == 0);
  CHECK(f(3) == 1);
  CHECK(f(5) == 0);
  CHECK(f(6) == 1);
  CHECK(f.describe() == "11(010)*");
  CHECK_THROWS_AS(GroundReal({}, {}), input_error);
}

TEST_CASE("antichains", "[cohen]") {
  const CohenPoset poset(1);
  std::vector<Condition> level;
  for (std::uint8_t a = 0; a < 2; ++a) {
    for (std::uint8_t b = 0; b < 2; ++b) level.push_back(poset.condition({{{0, 0}, a}, {{0, 1}, b}}));
  }
  CHECK(is_pairwise_incompatible(poset, level));
  level.push_back(poset.condition({{{0, 0}, 1}}));
  CHECK_FALSE(is_pairwise_incompatible(poset, level));
}

TEST_CASE("the distinct-reals demonstration", "[cohen]") {
  CohenDemoConfig cfg;
  const auto r = run_cohen_demo(cfg);
  CHECK(r.rows_pairwise_distinct);
  std::vector<std::vector<std::uint8_t>> rows;
  for (std::size_t x = 0; x < 4; ++x) rows.push_back(slice(r.filter, x, 8));
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = x + 1; y < 4; ++y) CHECK(rows[x] != rows[y]);
  }
  CHECK_THROWS_AS(slice(r.filter, 0, 9), precondition_error);

  // deterministic
  const auto again = run_cohen_demo(cfg);
  CHECK(again.matrix == r.matrix);
}

TEST_CASE("avoiding a ground real", "[cohen]") {
  CohenDemoConfig cfg;
  cfg.avoid.push_back({0, GroundReal({}, {0})});
  cfg.avoid.push_back({2, GroundReal({}, {1})});
  const auto r = run_cohen_demo(cfg);
  REQUIRE(r.avoid.size() == 2);
  for (const auto& v : r.avoid) {
    CHECK(v.differs);
    REQUIRE(v.witness);
  }
  const auto row0 = slice(r.filter, 0, 8);
  CHECK(row0 != std::vector<std::uint8_t>(8, 0));
  const auto row2 = slice(r.filter, 2, 8);
  CHECK(row2 != std::vector<std::uint8_t>(8, 1));
  CHECK(r.rows_pairwise_distinct);
}

TEST_CASE("without totality, slices stay undecided", "[cohen]") {
  CohenDemoConfig cfg;
  cfg.total = false;
  const auto r = run_cohen_demo(cfg);
  CHECK_THROWS_AS(slice(r.filter, 0, 8), precondition_error);
  bool any_undecided = false;
  for (const auto& row : r.matrix) {
    for (int v : row) any_undecided = any_undecided || v < 0;
  }
  CHECK(any_undecided);
  CHECK(r.rows_pairwise_distinct);
}
