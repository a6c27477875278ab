#include <catch_amalgamated.hpp>

#include "forcing/io.hpp"

using namespace forcing;
using io::json;

TEST_CASE("algebra files", "[io]") {
  const FinBoolAlg b = io::algebra_from_json(json::parse(R"({"atoms": ["x", "y"]})"));
  CHECK(b.atom_labels() == std::vector<std::string>{"x", "y"});

  const FinBoolAlg q = io::algebra_from_json(
      json::parse(R"({"quotient_of": {"atoms": ["a", "b", "c"]}, "ideal": [[], ["a"]]})"));
  CHECK(q.size() == 4);
  CHECK(q.atom_labels() == std::vector<std::string>{"b", "c"});

  CHECK_THROWS_AS(io::algebra_from_json(json::parse(R"({"atoms": ["x", "x"]})")), input_error);
  CHECK_THROWS_AS(io::algebra_from_json(json::parse(R"({"atoms": [1]})")), input_error);
  CHECK_THROWS_AS(io::algebra_from_json(json::parse(R"([])")), input_error);
  CHECK_THROWS_AS(io::algebra_from_json(json::parse(R"({"quotient_of": {"atoms": ["a", "b"]}, "ideal": [["a"]]})")),
                  input_error);
  CHECK_THROWS_AS(io::algebra_from_json(json::parse(R"({"quotient_of": {"atoms": ["a", "b"]}})")), input_error);
}

TEST_CASE("element literals", "[io]") {
  const FinBoolAlg b = letter_algebra(3);
  CHECK(io::element_from_text(b, R"(["c", "a"])") == b.element_of({"a", "c"}));
  CHECK(io::element_from_text(b, "[]").is_zero());
  CHECK(io::element_to_json(b.element_of({"b"})) == json::parse(R"(["b"])"));
  CHECK_THROWS_AS(io::element_from_text(b, R"(["z"])"), input_error);
  CHECK_THROWS_AS(io::element_from_text(b, R"(["a")"), input_error);
  CHECK_THROWS_AS(io::element_from_text(b, "1"), input_error);
}

TEST_CASE("poset files", "[io]") {
  const FinPoset p = io::poset_from_json(json::parse(R"({"elements": ["a", "b"], "leq": [["a", "b"]]})"));
  CHECK(p.leq(p.index_of("a"), p.index_of("b")));
  CHECK_FALSE(p.leq(p.index_of("b"), p.index_of("a")));
  CHECK(io::poset_from_json(json::parse(R"({"elements": ["p"]})")).size() == 1);
  CHECK_THROWS_AS(io::poset_from_json(json::parse(R"({"elements": []})")), input_error);
  CHECK_THROWS_AS(io::poset_from_json(json::parse(R"({"leq": []})")), input_error);
  CHECK_THROWS_AS(io::poset_from_json(json::parse(R"({"elements": ["a"], "leq": [["a"]]})")), input_error);
  CHECK_THROWS_AS(io::poset_from_json(json::parse(R"({"elements": ["a"], "leq": [["a", "q"]]})")), input_error);
  // a cycle is not antisymmetric
  CHECK_THROWS_AS(
      io::poset_from_json(json::parse(R"({"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]})")),
      input_error);
}

TEST_CASE("name files keep declaration order and reject cycles", "[io]") {
  const FinBoolAlg b = letter_algebra(2);
  const auto table = io::names_from_json(b, json::parse(R"({
    "check_of": {"zero": "[]"},
    "names": {"z": [["zero", ["a"]]], "m": [["z", ["b"]], ["zero", []]]}
  })"));
  REQUIRE(table.size() == 3);
  CHECK(table.entries()[0].first == "zero");
  CHECK(table.entries()[1].first == "z");
  CHECK(table.entries()[2].first == "m");
  CHECK(table.at("m").rank() == 2);

  CHECK_THROWS_AS(io::names_from_json(b, json::parse(R"({"names": {"p": [["p", ["a"]]]}})")), input_error);
  CHECK_THROWS_AS(io::names_from_json(b, json::parse(R"({"names": {"p": [["q", ["a"]]]}})")), input_error);
  CHECK_THROWS_AS(io::names_from_json(b, json::parse(R"({"names": {"p": [["q"]]}})")), input_error);
  CHECK_THROWS_AS(io::names_from_json(b, json::parse(R"({"names": {"p": [["q", ["nope"]]]}})")), input_error);
  CHECK_THROWS_AS(io::names_from_json(b, json::parse(R"({"check_of": {"c": "[[]"}})")), input_error);
  CHECK_THROWS_AS(io::names_from_json(b, json::parse(R"({"check_of": {"c": 3}})")), input_error);
}

TEST_CASE("model files", "[io]") {
  const auto m = io::model_from_json(json::parse(R"({"von_neumann": 3, "constants": {"two": "[[],[[]]]"}})"));
  CHECK(m.model.carrier().size() == 3);
  CHECK(m.constants.at("two") == von_neumann(2));
  CHECK(io::model_from_json(json::parse(R"({"carrier": ["[]", "[[]]"]})")).model.as_set() == von_neumann(2));
  CHECK_THROWS_AS(io::model_from_json(json::parse(R"({"carrier": ["[[[]]]"]})")), input_error);
  CHECK_THROWS_AS(io::model_from_json(json::parse(R"({"von_neumann": -1})")), input_error);
  CHECK_THROWS_AS(io::model_from_json(json::parse(R"({})")), input_error);
}

TEST_CASE("Cohen configs", "[io]") {
  const auto cfg = io::cohen_config_from_json(json::parse(
      R"({"kappa": 4, "columns": 8, "dense": ["total", "distinct"], "avoid": [{"row": 0, "prefix": [], "period": [0]}]})"));
  CHECK(cfg.kappa == 4);
  CHECK(cfg.columns == 8);
  CHECK(cfg.total);
  CHECK(cfg.distinct);
  REQUIRE(cfg.avoid.size() == 1);
  CHECK(cfg.avoid[0].real(5) == 0);

  const auto only_total = io::cohen_config_from_json(json::parse(R"({"dense": ["total"]})"));
  CHECK(only_total.total);
  CHECK_FALSE(only_total.distinct);

  CHECK_THROWS_AS(io::cohen_config_from_json(json::parse(R"({"kappa": 0})")), input_error);
  CHECK_THROWS_AS(io::cohen_config_from_json(json::parse(R"({"dense": ["sparse"]})")), input_error);
  CHECK_THROWS_AS(io::cohen_config_from_json(json::parse(R"({"avoid": [{"row": 9, "period": [0]}]})")), input_error);
  CHECK_THROWS_AS(io::cohen_config_from_json(json::parse(R"({"avoid": [{"row": 0, "period": [2]}]})")), input_error);
  CHECK_THROWS_AS(io::cohen_config_from_json(json::parse(R"({"avoid": [{"row": 0, "period": []}]})")), input_error);
}

TEST_CASE("malformed documents and missing files", "[io]") {
  CHECK_THROWS_AS(io::parse_json("{", "x"), input_error);
  CHECK_THROWS_AS(io::read_json("/nonexistent/forcing-file.json"), input_error);
}
