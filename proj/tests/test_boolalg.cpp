#include <catch_amalgamated.hpp>

#include <map>

#include "forcing/boolalg.hpp"
#include "forcing/laws.hpp"
#include "support.hpp"

using namespace forcing;

namespace {

SubsetPredicate as_predicate(const FinBoolAlg& alg, const std::vector<BAElement>& xs) { return {alg, xs}; }

std::string first_failure(const std::vector<LawResult>& report) {
  for (const auto& r : report) {
    if (r.failures) return r.name + ": " + r.counterexample;
  }
  return {};
}

} // namespace

TEST_CASE("elements, atoms, operations", "[boolalg]") {
  const FinBoolAlg b = letter_algebra(3);
  CHECK(b.size() == 8);
  CHECK(b.atoms().size() == 3);
  const BAElement ac = b.element_of({"a", "c"});
  CHECK(describe(ac) == "{a,c}");
  CHECK(describe(b.zero()) == "0");
  CHECK(describe(b.one()) == "1");
  CHECK(b.complement(ac) == b.element_of({"b"}));
  CHECK(b.join(ac, b.element_of({"b"})).is_one());
  CHECK(b.meet(ac, b.element_of({"b"})).is_zero());
  CHECK(is_atom(b.element_of({"c"})));
  CHECK_FALSE(is_atom(ac));
  CHECK(atoms_below(ac).size() == 2);
  CHECK(ring_add(ac, b.element_of({"a", "b"})) == b.element_of({"b", "c"}));
  const std::vector<BAElement> xs{b.element_of({"a"}), b.element_of({"b"})};
  CHECK(sup(b, xs) == b.element_of({"a", "b"}));
  CHECK(inf(b, xs).is_zero());
  CHECK(sup(b, std::vector<BAElement>{}).is_zero());
  CHECK(inf(b, std::vector<BAElement>{}).is_one());
}

TEST_CASE("mixing algebras is rejected", "[boolalg]") {
  const FinBoolAlg a = letter_algebra(2);
  const FinBoolAlg b = letter_algebra(2);
  CHECK_THROWS(a.meet(a.one(), b.one()));
  CHECK_THROWS_AS(FinBoolAlg({"a", "a"}), input_error);
  CHECK_THROWS(a.element_of({"z"}));
}

TEST_CASE("law suite passes on powerset algebras with 0-4 atoms", "[boolalg][laws]") {
  for (std::size_t n = 0; n <= 4; ++n) {
    const FinBoolAlg b = letter_algebra(n);
    auto report = check_boolean_laws(b);
    INFO("atoms = " << n << " " << first_failure(report.laws));
    CHECK(report.all_passed());
  }
}

TEST_CASE("law suite detects a broken structure", "[boolalg][laws]") {
  // complement replaced by identity: complement laws must fail
  struct broken {
    using value_type = BAElement;
    FinBoolAlg b = letter_algebra(2);
    std::vector<BAElement> elements() const { return b.elements(); }
    BAElement zero() const { return b.zero(); }
    BAElement one() const { return b.one(); }
    BAElement meet(const BAElement& x, const BAElement& y) const { return b.meet(x, y); }
    BAElement join(const BAElement& x, const BAElement& y) const { return b.join(x, y); }
    BAElement complement(const BAElement& x) const { return x; }
    bool leq(const BAElement& x, const BAElement& y) const { return b.leq(x, y); }
    bool equal(const BAElement& x, const BAElement& y) const { return x == y; }
  };
  auto report = check_boolean_laws(broken{});
  CHECK_FALSE(report.all_passed());
  CHECK(report.failure_count() > 0);
}

TEST_CASE("ideal, filter and ultrafilter predicates agree with brute force", "[boolalg]") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const FinBoolAlg b = letter_algebra(n);
    for (const auto& s : support::all_subsets(b)) {
      const auto p = as_predicate(b, s);
      CHECK(is_ideal(p) == support::naive_ideal(b, s));
      CHECK(is_filter(p) == support::naive_filter(b, s));
      CHECK(is_ultrafilter(p) == (support::naive_filter(b, s) && support::naive_decides(b, s)));
    }
    // ultrafilters are exactly the principal filters at atoms
    const auto us = ultrafilters(b);
    CHECK(us.size() == n);
    CHECK(support::naive_ultrafilters(b).size() == n);
    for (const auto& u : us) {
      CHECK(is_ultrafilter(u));
      std::size_t atoms_in = 0;
      for (const auto& a : b.atoms()) atoms_in += u.contains(a);
      CHECK(atoms_in == 1);
    }
  }
}

TEST_CASE("upward and downward closures", "[boolalg]") {
  const FinBoolAlg b = letter_algebra(3);
  const BAElement a = b.element_of({"a"});
  const auto up = upward_closure(b, a);
  CHECK(up.size() == 4);
  CHECK(is_filter(up));
  CHECK(is_ultrafilter(up));
  const auto down = downward_closure(b, b.element_of({"a", "b"}));
  CHECK(down.size() == 4);
  CHECK(is_ideal(down));
  CHECK(is_prime_ideal(downward_closure(b, b.element_of({"a", "b"}))));
  CHECK_FALSE(is_prime_ideal(downward_closure(b, a)));
}

TEST_CASE("dual exchanges ideals and filters", "[boolalg]") {
  const FinBoolAlg b = letter_algebra(3);
  for (const auto& s : support::all_subsets(b)) {
    const auto p = as_predicate(b, s);
    CHECK(dual(dual(p)) == p);
    CHECK(is_ideal(p) == is_filter(dual(p)));
    CHECK(is_prime_ideal(p) == is_ultrafilter(dual(p)));
  }
}

TEST_CASE("quotient of the 3-atom algebra by {0,{a}}", "[boolalg][quotient]") {
  const FinBoolAlg b = letter_algebra(3);
  const auto ideal = downward_closure(b, b.element_of({"a"}));
  const Quotient q = quotient(b, ideal);
  CHECK(q.classes.size() == 4);
  CHECK(q.algebra.size() == 4);
  CHECK(q.algebra.atom_labels() == std::vector<std::string>{"b", "c"});
  CHECK(is_homomorphism(q.projection));
  CHECK(kernel(q.projection) == ideal);
  CHECK(q.projection(b.element_of({"a", "b"})) == q.projection(b.element_of({"b"})));
  CHECK(check_boolean_laws(QuotientStructure(q)).all_passed());
}

TEST_CASE("quotients by every ideal of a 3-atom algebra", "[boolalg][quotient]") {
  const FinBoolAlg b = letter_algebra(3);
  std::size_t count = 0;
  for (const auto& s : support::naive_ideals(b)) {
    ++count;
    const auto ideal = as_predicate(b, s);
    const Quotient q = quotient(b, ideal);
    // |B/I| = |B| / |I| for a finite algebra
    CHECK(q.algebra.size() * ideal.size() == b.size());
    CHECK(is_homomorphism(q.projection));
    CHECK(kernel(q.projection) == ideal);
    CHECK(check_boolean_laws(QuotientStructure(q)).all_passed());
    CHECK(check_boolean_laws(q.algebra).all_passed());
  }
  CHECK(count == 7);  // one per proper principal ideal: 2^3 - 1
}

TEST_CASE("quotient rejects non-ideals", "[boolalg][quotient]") {
  const FinBoolAlg b = letter_algebra(2);
  CHECK_THROWS_AS(quotient(b, SubsetPredicate(b, {b.element_of({"a"})})), precondition_error);
  CHECK_THROWS_AS(quotient(b, SubsetPredicate(b, b.elements())), precondition_error);
}

TEST_CASE("element maps", "[boolalg]") {
  const FinBoolAlg b = letter_algebra(2);
  const FinBoolAlg two = letter_algebra(1);
  CHECK(is_homomorphism(ElementMap::identity(b)));
  CHECK(kernel(ElementMap::identity(b)) == SubsetPredicate(b, {b.zero()}));

  // evaluation at atom a is a homomorphism onto 2 with kernel ↓{b}
  std::map<BAElement, BAElement> at_a;
  for (const auto& x : b.elements()) at_a.emplace(x, (x.bits() & 1) ? two.one() : two.zero());
  const auto h = ElementMap::from_pairs(b, two, at_a);
  CHECK(is_homomorphism(h));
  CHECK(kernel(h) == downward_closure(b, b.element_of({"b"})));

  std::map<BAElement, BAElement> constant;
  for (const auto& x : b.elements()) constant.emplace(x, two.one());
  CHECK_FALSE(is_homomorphism(ElementMap::from_pairs(b, two, constant)));

  at_a.erase(b.zero());
  CHECK_THROWS_AS(ElementMap::from_pairs(b, two, at_a), precondition_error);
}
