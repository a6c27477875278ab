#ifndef FORCING_TESTS_SUPPORT_HPP
#define FORCING_TESTS_SUPPORT_HPP

// Independent brute-force oracles shared by the unit tests and the
// acceptance binary. Nothing here calls the library routine it checks.

#include <algorithm>
#include <bit>
#include <functional>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "forcing/forcing.hpp"

namespace support {

using forcing::BAElement;
using forcing::FinBoolAlg;
using forcing::Formula;
using forcing::HFSet;
using forcing::Op;
using forcing::Term;

// ---- subsets of a finite algebra, by definition -----------------------------------

/// Every subset of B's elements, as membership vectors over alg.elements().
inline std::vector<std::vector<BAElement>> all_subsets(const FinBoolAlg& alg) {
  const auto xs = alg.elements();
  std::vector<std::vector<BAElement>> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << xs.size()); ++s) {
    std::vector<BAElement> pick;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (s >> i & 1) pick.push_back(xs[i]);
    }
    out.push_back(std::move(pick));
  }
  return out;
}

inline bool has(const std::vector<BAElement>& s, std::uint64_t bits) {
  return std::any_of(s.begin(), s.end(), [&](const BAElement& x) { return x.bits() == bits; });
}

/// Nonempty, proper, downward closed, closed under ∨ (bit arithmetic only).
inline bool naive_ideal(const FinBoolAlg& alg, const std::vector<BAElement>& s) {
  const std::uint64_t full = alg.one().bits();
  if (s.empty() || has(s, full)) return false;
  for (const auto& x : s) {
    for (std::uint64_t y = 0; y <= full; ++y) {
      if ((y & ~x.bits()) == 0 && !has(s, y)) return false;
    }
    for (const auto& z : s) {
      if (!has(s, x.bits() | z.bits())) return false;
    }
  }
  return true;
}

inline bool naive_filter(const FinBoolAlg& alg, const std::vector<BAElement>& s) {
  const std::uint64_t full = alg.one().bits();
  if (s.empty() || has(s, 0)) return false;
  for (const auto& x : s) {
    for (std::uint64_t y = 0; y <= full; ++y) {
      if ((x.bits() & ~y) == 0 && !has(s, y)) return false;
    }
    for (const auto& z : s) {
      if (!has(s, x.bits() & z.bits())) return false;
    }
  }
  return true;
}

inline bool naive_decides(const FinBoolAlg& alg, const std::vector<BAElement>& s) {
  const std::uint64_t full = alg.one().bits();
  for (std::uint64_t y = 0; y <= full; ++y) {
    if (has(s, y) == has(s, full & ~y)) return false;
  }
  return true;
}

inline std::vector<std::vector<BAElement>> naive_ideals(const FinBoolAlg& alg) {
  std::vector<std::vector<BAElement>> out;
  for (auto& s : all_subsets(alg)) {
    if (naive_ideal(alg, s)) out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<std::vector<BAElement>> naive_filters(const FinBoolAlg& alg) {
  std::vector<std::vector<BAElement>> out;
  for (auto& s : all_subsets(alg)) {
    if (naive_filter(alg, s)) out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<std::vector<BAElement>> naive_ultrafilters(const FinBoolAlg& alg) {
  std::vector<std::vector<BAElement>> out;
  for (auto& s : all_subsets(alg)) {
    if (naive_filter(alg, s) && naive_decides(alg, s)) out.push_back(std::move(s));
  }
  return out;
}

/// Every dense subset of B∖{0}: each nonzero x has some d ≤ x in D.
inline std::vector<std::vector<BAElement>> naive_dense_sets(const FinBoolAlg& alg) {
  std::vector<BAElement> nonzero;
  for (const auto& x : alg.elements()) {
    if (!x.is_zero()) nonzero.push_back(x);
  }
  std::vector<std::vector<BAElement>> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << nonzero.size()); ++s) {
    std::vector<BAElement> d;
    for (std::size_t i = 0; i < nonzero.size(); ++i) {
      if (s >> i & 1) d.push_back(nonzero[i]);
    }
    bool dense = true;
    for (const auto& x : nonzero) {
      const bool met = std::any_of(d.begin(), d.end(), [&](const BAElement& e) { return (e.bits() & ~x.bits()) == 0; });
      if (!met) dense = false;
    }
    if (dense) out.push_back(std::move(d));
  }
  return out;
}

// ---- posets up to isomorphism ---------------------------------------------------------

/// A poset on n points as an n×n leq matrix (row-major, leq[a*n+b] = a ≤ b).
using Relation = std::vector<bool>;

/**
 * All posets on n points up to isomorphism. Every finite poset has a
 * linear extension, so it suffices to consider relations with a ≤ b only
 * when a ≤ b as integers; these are reduced to a canonical form by
 * minimizing over all relabellings.
 */
inline std::vector<Relation> posets_up_to_iso(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) slots.emplace_back(a, b);
  }
  std::vector<std::size_t> perm(n);
  std::vector<std::vector<std::size_t>> perms;
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::set<Relation> seen;
  std::vector<Relation> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << slots.size()); ++s) {
    Relation r(n * n, false);
    for (std::size_t i = 0; i < n; ++i) r[i * n + i] = true;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (s >> k & 1) r[slots[k].first * n + slots[k].second] = true;
    }
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a) {
      for (std::size_t b = 0; b < n && transitive; ++b) {
        for (std::size_t c = 0; c < n && transitive; ++c) {
          if (r[a * n + b] && r[b * n + c] && !r[a * n + c]) transitive = false;
        }
      }
    }
    if (!transitive) continue;
    Relation best;
    for (const auto& p : perms) {
      Relation q(n * n, false);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) q[p[a] * n + p[b]] = r[a * n + b];
      }
      if (best.empty() || q < best) best = q;
    }
    if (seen.insert(best).second) out.push_back(best);
  }
  return out;
}

inline forcing::FinPoset to_poset(const Relation& r, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && r[a * n + b]) pairs.emplace_back(a, b);
    }
  }
  return forcing::FinPoset::from_pairs(n, pairs);
}

/// Separativity straight from the definition, with the order given as a matrix.
inline bool naive_separative(const Relation& r, std::size_t n) {
  auto le = [&](std::size_t a, std::size_t b) { return r[a * n + b]; };
  auto compatible = [&](std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < n; ++c) {
      if (le(c, a) && le(c, b)) return true;
    }
    return false;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (le(y, x)) continue;  // need x not ≥ y, i.e. not y ≤ x
      bool found = false;
      for (std::size_t z = 0; z < n && !found; ++z) {
        if (le(z, y) && !compatible(z, x)) found = true;
      }
      if (!found) return false;
    }
  }
  return true;
}

// ---- HF sets ---------------------------------------------------------------------------

/// All HF sets of rank < r, built level by level: V_{k+1} = P(V_k).
inline std::vector<HFSet> hf_of_rank_below(std::size_t r) {
  std::vector<HFSet> level;
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<HFSet> next;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << level.size()); ++s) {
      std::vector<HFSet> pick;
      for (std::size_t i = 0; i < level.size(); ++i) {
        if (s >> i & 1) pick.push_back(level[i]);
      }
      next.push_back(HFSet::of(std::move(pick)));
    }
    level = std::move(next);
  }
  return level;
}

// ---- a second, substitution-based classical evaluator -------------------------------------

namespace detail {

inline Term substitute(const Term& t, const std::string& var, const HFSet& value) {
  return t.is_ident() && t.ident == var ? Term::lit(value) : t;
}

/// φ[value/var], stopping at binders of the same variable.
inline Formula substitute(const Formula& f, const std::string& var, const HFSet& value) {
  switch (f.op()) {
    case Op::member: return Formula::member(substitute(f.lhs(), var, value), substitute(f.rhs(), var, value));
    case Op::equal: return Formula::equal(substitute(f.lhs(), var, value), substitute(f.rhs(), var, value));
    case Op::negation: return Formula::negation(substitute(f.first(), var, value));
    case Op::conjunction:
      return Formula::conjunction(substitute(f.first(), var, value), substitute(f.second(), var, value));
    case Op::disjunction:
      return Formula::disjunction(substitute(f.first(), var, value), substitute(f.second(), var, value));
    case Op::implication:
      return Formula::implication(substitute(f.first(), var, value), substitute(f.second(), var, value));
    case Op::biconditional:
      return Formula::biconditional(substitute(f.first(), var, value), substitute(f.second(), var, value));
    case Op::forall:
    case Op::exists:
      if (f.variable() == var) return f;
      return f.op() == Op::forall ? Formula::forall(f.variable(), substitute(f.first(), var, value))
                                  : Formula::exists(f.variable(), substitute(f.first(), var, value));
  }
  return f;
}

inline bool closed_truth(const Formula& f, const std::vector<HFSet>& universe) {
  auto lit = [](const Term& t) -> const HFSet& {
    if (t.is_ident()) throw forcing::input_error("naive evaluator: free identifier " + t.ident);
    return t.literal;
  };
  switch (f.op()) {
    case Op::member: {
      const auto& xs = lit(f.rhs()).elements();
      return std::find(xs.begin(), xs.end(), lit(f.lhs())) != xs.end();
    }
    case Op::equal: return forcing::to_literal(lit(f.lhs())) == forcing::to_literal(lit(f.rhs()));
    case Op::negation: return !closed_truth(f.first(), universe);
    case Op::conjunction: return closed_truth(f.first(), universe) && closed_truth(f.second(), universe);
    case Op::disjunction: return closed_truth(f.first(), universe) || closed_truth(f.second(), universe);
    case Op::implication: return !closed_truth(f.first(), universe) || closed_truth(f.second(), universe);
    case Op::biconditional: return closed_truth(f.first(), universe) == closed_truth(f.second(), universe);
    case Op::forall:
      for (const auto& u : universe) {
        if (!closed_truth(substitute(f.first(), f.variable(), u), universe)) return false;
      }
      return true;
    case Op::exists:
      for (const auto& u : universe) {
        if (closed_truth(substitute(f.first(), f.variable(), u), universe)) return true;
      }
      return false;
  }
  return false;
}

} // namespace detail

/// Substitutes constants, then evaluates by repeated substitution.
inline bool naive_truth(const Formula& f, const std::vector<HFSet>& universe,
                        const std::map<std::string, HFSet>& constants = {}) {
  Formula g = f;
  for (const auto& [id, v] : constants) g = detail::substitute(g, id, v);
  return detail::closed_truth(g, universe);
}

// ---- formula generation --------------------------------------------------------------------

/**
 * Random formulas over the given constants and HF literals. Bound
 * variables are drawn from x0..x2; atoms use variables in scope,
 * constants, or literals. `max_depth` bounds connective nesting.
 */
class FormulaGenerator {
public:
  FormulaGenerator(std::uint32_t seed, std::vector<std::string> constants, std::vector<HFSet> literals)
      : rng_(seed), constants_(std::move(constants)), literals_(std::move(literals)) {}

  Formula closed(std::size_t max_depth) { return gen(max_depth, {}); }

private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Term term(const std::vector<std::string>& scope) {
    const std::size_t options = scope.size() + constants_.size() + literals_.size();
    std::size_t k = pick(options);
    if (k < scope.size()) return Term::var(scope[k]);
    k -= scope.size();
    if (k < constants_.size()) return Term::var(constants_[k]);
    return Term::lit(literals_[k - constants_.size()]);
  }

  Formula gen(std::size_t depth, std::vector<std::string> scope) {
    const std::size_t choice = depth == 0 ? pick(2) : pick(9);
    switch (choice) {
      case 0: return Formula::member(term(scope), term(scope));
      case 1: return Formula::equal(term(scope), term(scope));
      case 2: return Formula::negation(gen(depth - 1, scope));
      case 3: return Formula::conjunction(gen(depth - 1, scope), gen(depth - 1, scope));
      case 4: return Formula::disjunction(gen(depth - 1, scope), gen(depth - 1, scope));
      case 5: return Formula::implication(gen(depth - 1, scope), gen(depth - 1, scope));
      case 6: return Formula::biconditional(gen(depth - 1, scope), gen(depth - 1, scope));
      default: {
        std::string v = "x" + std::to_string(pick(3));
        scope.push_back(v);
        Formula body = gen(depth - 1, scope);
        return choice == 7 ? Formula::forall(v, body) : Formula::exists(v, body);
      }
    }
  }

  std::mt19937 rng_;
  std::vector<std::string> constants_;
  std::vector<HFSet> literals_;
};

/// Which operators occur in f.
inline std::set<Op> operators(const Formula& f) {
  std::set<Op> out{f.op()};
  if (f.is_atomic()) return out;
  auto add = [&](const Formula& g) {
    auto s = operators(g);
    out.insert(s.begin(), s.end());
  };
  add(f.first());
  if (f.is_binary()) add(f.second());
  return out;
}

// ---- small transitive models and name contexts ------------------------------------------

/// Every transitive set with at most `max_size` elements drawn from V_4.
inline std::vector<forcing::TransitiveModel> small_transitive_models(std::size_t max_size) {
  const auto v4 = hf_of_rank_below(4);
  std::vector<forcing::TransitiveModel> out;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << v4.size()); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) > max_size) continue;
    std::vector<HFSet> pick;
    for (std::size_t i = 0; i < v4.size(); ++i) {
      if (s >> i & 1) pick.push_back(v4[i]);
    }
    bool transitive = true;
    for (const auto& x : pick) {
      for (const auto& y : x.elements()) {
        if (std::find(pick.begin(), pick.end(), y) == pick.end()) transitive = false;
      }
    }
    if (transitive) out.emplace_back(std::move(pick));
  }
  return out;
}

/// `count` random names of rank at most 2 over `alg`, named n0, n1, ...
inline forcing::NameContext<BAElement> random_context(std::mt19937& rng, const FinBoolAlg& alg, std::size_t count) {
  using N = forcing::Name<BAElement>;
  const auto xs = alg.elements();
  auto weight = [&] { return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)]; };
  auto entries = [&](const std::vector<N>& children) {
    std::vector<N::entry> es;
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    for (std::size_t i = 0; i < k; ++i) {
      es.emplace_back(children[std::uniform_int_distribution<std::size_t>(0, children.size() - 1)(rng)], weight());
    }
    return N(std::move(es));
  };
  std::vector<N> low{N()};
  for (int i = 0; i < 3; ++i) low.push_back(entries({N()}));
  std::vector<N> pool = low;
  for (int i = 0; i < 4; ++i) pool.push_back(entries(low));
  forcing::NameContext<BAElement> ctx;
  for (std::size_t i = 0; i < count; ++i) {
    ctx.names.emplace_back("n" + std::to_string(i),
                           pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
  }
  return ctx;
}

/// Values of the context names under the ultrafilter given by its members.
inline std::map<std::string, HFSet> context_values(const forcing::NameContext<BAElement>& ctx,
                                                   const std::vector<BAElement>& ultrafilter) {
  std::map<std::string, HFSet> out;
  auto in_g = [&](const BAElement& x) { return std::find(ultrafilter.begin(), ultrafilter.end(), x) != ultrafilter.end(); };
  // direct recursive unfolding, no memo
  std::function<HFSet(const forcing::Name<BAElement>&)> unfold = [&](const forcing::Name<BAElement>& n) {
    std::vector<HFSet> kept;
    for (const auto& [child, w] : n.entries()) {
      if (in_g(w)) kept.push_back(unfold(child));
    }
    return HFSet::of(std::move(kept));
  };
  for (const auto& [id, n] : ctx.names) out.emplace(id, unfold(n));
  return out;
}

/// A closed-formula corpus over the given constants: depth in [2, max_depth],
/// together covering every operator.
inline std::vector<Formula> formula_corpus(std::uint32_t seed, std::size_t size, std::vector<std::string> constants,
                                           std::vector<HFSet> literals, std::size_t max_depth = 3) {
  FormulaGenerator gen(seed, std::move(constants), std::move(literals));
  std::vector<Formula> out;
  std::set<Op> seen;
  while (out.size() < size || seen.size() < 9) {
    Formula f = gen.closed(max_depth);
    if (forcing::depth(f) < 2) continue;
    auto ops = operators(f);
    seen.insert(ops.begin(), ops.end());
    out.push_back(std::move(f));
  }
  return out;
}

} // namespace support

#endif
