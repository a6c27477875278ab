#ifndef FORCING_LAWS_HPP
#define FORCING_LAWS_HPP

#include <concepts>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace forcing {

/// Anything with enumerable elements and the boolean-algebra operations.
/// `equal` is the structure's own equality (e.g. equivalence of class
/// representatives in a quotient).
template <class A>
concept boolean_structure = requires(const A& a, const typename A::value_type& x) {
  { a.elements() };
  { a.zero() } -> std::convertible_to<typename A::value_type>;
  { a.one() } -> std::convertible_to<typename A::value_type>;
  { a.meet(x, x) } -> std::convertible_to<typename A::value_type>;
  { a.join(x, x) } -> std::convertible_to<typename A::value_type>;
  { a.complement(x) } -> std::convertible_to<typename A::value_type>;
  { a.leq(x, x) } -> std::convertible_to<bool>;
  { a.equal(x, x) } -> std::convertible_to<bool>;
};

struct LawResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string counterexample;

  bool passed() const noexcept { return failures == 0; }
};

struct LawReport {
  std::vector<LawResult> laws;

  bool all_passed() const noexcept {
    for (const auto& l : laws) {
      if (!l.passed()) return false;
    }
    return true;
  }
  std::size_t failure_count() const noexcept {
    std::size_t n = 0;
    for (const auto& l : laws) n += l.failures;
    return n;
  }
};

/**
 * Exhaustively checks the boolean algebra laws on every element, pair and
 * triple of `alg`: partial order, bounds, glb/lub, commutativity,
 * associativity, identities, distributivity, complements, complement
 * uniqueness, De Morgan, contraposition, and the ring view with
 * x·y = x∧y and x+y = (x∧¬y)∨(y∧¬x).
 */
template <boolean_structure A>
LawReport check_boolean_laws(
    const A& alg, std::function<std::string(const typename A::value_type&)> show = {}) {
  using T = typename A::value_type;
  const auto xs = alg.elements();
  const T zero = alg.zero();
  const T one = alg.one();
  auto eq = [&](const T& a, const T& b) { return alg.equal(a, b); };
  auto add = [&](const T& a, const T& b) {
    return alg.join(alg.meet(a, alg.complement(b)), alg.meet(b, alg.complement(a)));
  };
  auto mul = [&](const T& a, const T& b) { return alg.meet(a, b); };
  auto txt = [&](const T& a) { return show ? show(a) : std::string("?"); };

  LawReport report;
  auto law1 = [&](std::string name, auto&& pred) {
    LawResult r{std::move(name), 0, 0, {}};
    for (const auto& x : xs) {
      ++r.checked;
      if (!pred(x) && r.failures++ == 0) r.counterexample = "x=" + txt(x);
    }
    report.laws.push_back(std::move(r));
  };
  auto law2 = [&](std::string name, auto&& pred) {
    LawResult r{std::move(name), 0, 0, {}};
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        ++r.checked;
        if (!pred(x, y) && r.failures++ == 0) r.counterexample = "x=" + txt(x) + " y=" + txt(y);
      }
    }
    report.laws.push_back(std::move(r));
  };
  auto law3 = [&](std::string name, auto&& pred) {
    LawResult r{std::move(name), 0, 0, {}};
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        for (const auto& z : xs) {
          ++r.checked;
          if (!pred(x, y, z) && r.failures++ == 0) {
            r.counterexample = "x=" + txt(x) + " y=" + txt(y) + " z=" + txt(z);
          }
        }
      }
    }
    report.laws.push_back(std::move(r));
  };

  // order
  law1("leq reflexive", [&](const T& x) { return alg.leq(x, x); });
  law2("leq antisymmetric", [&](const T& x, const T& y) {
    return !(alg.leq(x, y) && alg.leq(y, x)) || eq(x, y);
  });
  law3("leq transitive", [&](const T& x, const T& y, const T& z) {
    return !(alg.leq(x, y) && alg.leq(y, z)) || alg.leq(x, z);
  });
  law1("bounds 0 <= x <= 1", [&](const T& x) { return alg.leq(zero, x) && alg.leq(x, one); });
  law3("meet is greatest lower bound", [&](const T& x, const T& y, const T& z) {
    const T m = alg.meet(x, y);
    return alg.leq(m, x) && alg.leq(m, y) && (!(alg.leq(z, x) && alg.leq(z, y)) || alg.leq(z, m));
  });
  law3("join is least upper bound", [&](const T& x, const T& y, const T& z) {
    const T j = alg.join(x, y);
    return alg.leq(x, j) && alg.leq(y, j) && (!(alg.leq(x, z) && alg.leq(y, z)) || alg.leq(j, z));
  });

  // lattice identities
  law2("join commutative", [&](const T& x, const T& y) { return eq(alg.join(x, y), alg.join(y, x)); });
  law2("meet commutative", [&](const T& x, const T& y) { return eq(alg.meet(x, y), alg.meet(y, x)); });
  law3("join associative", [&](const T& x, const T& y, const T& z) {
    return eq(alg.join(x, alg.join(y, z)), alg.join(alg.join(x, y), z));
  });
  law3("meet associative", [&](const T& x, const T& y, const T& z) {
    return eq(alg.meet(x, alg.meet(y, z)), alg.meet(alg.meet(x, y), z));
  });
  law1("x or 1 = 1", [&](const T& x) { return eq(alg.join(x, one), one); });
  law1("x and 1 = x", [&](const T& x) { return eq(alg.meet(x, one), x); });
  law1("x or 0 = x", [&](const T& x) { return eq(alg.join(x, zero), x); });
  law1("x and 0 = 0", [&](const T& x) { return eq(alg.meet(x, zero), zero); });
  law2("x <= y iff x and y = x", [&](const T& x, const T& y) {
    return alg.leq(x, y) == eq(alg.meet(x, y), x);
  });

  // complements and distributivity
  law1("x or not x = 1", [&](const T& x) { return eq(alg.join(x, alg.complement(x)), one); });
  law1("x and not x = 0", [&](const T& x) { return eq(alg.meet(x, alg.complement(x)), zero); });
  law3("join distributes over meet", [&](const T& x, const T& y, const T& z) {
    return eq(alg.join(x, alg.meet(y, z)), alg.meet(alg.join(x, y), alg.join(x, z)));
  });
  law3("meet distributes over join", [&](const T& x, const T& y, const T& z) {
    return eq(alg.meet(x, alg.join(y, z)), alg.join(alg.meet(x, y), alg.meet(x, z)));
  });
  law2("complement unique", [&](const T& x, const T& y) {
    const bool is_complement = eq(alg.join(x, y), one) && eq(alg.meet(x, y), zero);
    return !is_complement || eq(y, alg.complement(x));
  });
  law1("double negation", [&](const T& x) { return eq(alg.complement(alg.complement(x)), x); });
  law2("De Morgan (join)", [&](const T& x, const T& y) {
    return eq(alg.complement(alg.join(x, y)), alg.meet(alg.complement(x), alg.complement(y)));
  });
  law2("De Morgan (meet)", [&](const T& x, const T& y) {
    return eq(alg.complement(alg.meet(x, y)), alg.join(alg.complement(x), alg.complement(y)));
  });
  law2("x <= y iff not y <= not x", [&](const T& x, const T& y) {
    return alg.leq(x, y) == alg.leq(alg.complement(y), alg.complement(x));
  });

  // ring view
  law2("ring + commutative", [&](const T& x, const T& y) { return eq(add(x, y), add(y, x)); });
  law3("ring + associative", [&](const T& x, const T& y, const T& z) {
    return eq(add(x, add(y, z)), add(add(x, y), z));
  });
  law1("ring x + 0 = x", [&](const T& x) { return eq(add(x, zero), x); });
  law1("ring x + x = 0", [&](const T& x) { return eq(add(x, x), zero); });
  law3("ring * associative", [&](const T& x, const T& y, const T& z) {
    return eq(mul(x, mul(y, z)), mul(mul(x, y), z));
  });
  law1("ring x * 1 = x", [&](const T& x) { return eq(mul(x, one), x); });
  law3("ring * distributes over +", [&](const T& x, const T& y, const T& z) {
    return eq(mul(x, add(y, z)), add(mul(x, y), mul(x, z)));
  });
  law1("ring x * x = x", [&](const T& x) { return eq(mul(x, x), x); });
  law2("x <= y iff x * y = x", [&](const T& x, const T& y) {
    return alg.leq(x, y) == eq(mul(x, y), x);
  });
  law2("x or y = x + y + x*y", [&](const T& x, const T& y) {
    return eq(alg.join(x, y), add(add(x, y), mul(x, y)));
  });

  return report;
}

} // namespace forcing

#endif
