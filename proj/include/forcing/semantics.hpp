#ifndef FORCING_SEMANTICS_HPP
#define FORCING_SEMANTICS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "boolalg.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "hfset.hpp"
#include "names.hpp"

namespace forcing {

/// A finite transitive set used as a quantifier range. Validated on construction.
class TransitiveModel {
public:
  explicit TransitiveModel(std::vector<HFSet> carrier) : carrier_(HFSet::of(std::move(carrier))) {
    if (!is_transitive(carrier_)) throw input_error("model carrier is not transitive: " + to_literal(carrier_));
  }

  /// The von Neumann natural n as a model: {0, ..., n-1}.
  static TransitiveModel natural(std::size_t n) { return TransitiveModel(von_neumann(n).elements()); }

  const std::vector<HFSet>& carrier() const noexcept { return carrier_.elements(); }
  const HFSet& as_set() const noexcept { return carrier_; }
  bool contains(const HFSet& x) const { return carrier_.contains(x); }

private:
  HFSet carrier_;
};

/**
 * Classical evaluation with quantifiers ranging over `universe`.
 * Identifiers resolve to bound variables first, then to `constants`.
 * Quantifier nodes are memoized per (node, bound-variable assignment).
 */
class ClassicalEvaluator {
public:
  ClassicalEvaluator(std::vector<HFSet> universe, std::map<std::string, HFSet> constants)
      : universe_(std::move(universe)), constants_(std::move(constants)) {}

  bool operator()(const Formula& f) {
    for (const auto& id : free_identifiers(f)) {
      if (!constants_.contains(id)) throw input_error("unresolved identifier '" + id + "'");
    }
    memo_.clear();
    return eval(f);
  }

private:
  const HFSet& value(const Term& t) const {
    if (!t.is_ident()) return t.literal;
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == t.ident) return universe_[it->second];
    }
    auto c = constants_.find(t.ident);
    if (c == constants_.end()) {
      throw input_error("unresolved identifier '" + t.ident + "' at position " + std::to_string(t.position));
    }
    return c->second;
  }

  bool eval(const Formula& f) {
    switch (f.op()) {
      case Op::member: return value(f.rhs()).contains(value(f.lhs()));
      case Op::equal: return value(f.lhs()) == value(f.rhs());
      case Op::negation: return !eval(f.first());
      case Op::conjunction: return eval(f.first()) && eval(f.second());
      case Op::disjunction: return eval(f.first()) || eval(f.second());
      case Op::implication: return !eval(f.first()) || eval(f.second());
      case Op::biconditional: return eval(f.first()) == eval(f.second());
      case Op::forall:
      case Op::exists: break;
    }
    if (constants_.contains(f.variable())) {
      throw input_error("variable '" + f.variable() + "' shadows a constant");
    }
    memo_key key{f.identity(), env_};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const bool universal = f.op() == Op::forall;
    bool result = universal;
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      env_.emplace_back(f.variable(), i);
      const bool v = eval(f.first());
      env_.pop_back();
      if (v != universal) {
        result = v;
        break;
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  std::vector<HFSet> universe_;
  std::map<std::string, HFSet> constants_;
  using environment = std::vector<std::pair<std::string, std::size_t>>;
  using memo_key = std::pair<const void*, environment>;

  environment env_;
  std::map<memo_key, bool> memo_;
};

inline bool evaluate_classical(const Formula& f, std::vector<HFSet> universe,
                               std::map<std::string, HFSet> constants = {}) {
  return ClassicalEvaluator(std::move(universe), std::move(constants))(f);
}

/// M ⊨ φ: quantifiers range over M. Literals and constants must be members of M.
inline bool models(const TransitiveModel& m, const Formula& f, const std::map<std::string, HFSet>& constants = {}) {
  for (const auto& t : literal_terms(f)) {
    if (!m.contains(t.literal)) {
      throw input_error("literal " + to_literal(t.literal) + " at position " + std::to_string(t.position) +
                        " is not in the model");
    }
  }
  for (const auto& [id, x] : constants) {
    if (!m.contains(x)) throw input_error("constant '" + id + "' is not in the model");
  }
  return evaluate_classical(f, m.carrier(), constants);
}

// ---- relativization -----------------------------------------------------------

/// An identifier based on `base` that does not occur in f.
inline std::string fresh_identifier(const Formula& f, const std::string& base = "M") {
  const auto used = all_identifiers(f);
  if (!used.contains(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!used.contains(candidate)) return candidate;
  }
}

/// φ^M with M named by `model`: ∀x ψ ↦ ∀x (x ∈ M → ψ^M), ∃x ψ ↦ ∃x (x ∈ M ∧ ψ^M).
inline Formula relativize_to(const Formula& f, const std::string& model) {
  switch (f.op()) {
    case Op::member:
    case Op::equal: return f;
    case Op::negation: return Formula::negation(relativize_to(f.first(), model));
    case Op::conjunction: return Formula::conjunction(relativize_to(f.first(), model), relativize_to(f.second(), model));
    case Op::disjunction: return Formula::disjunction(relativize_to(f.first(), model), relativize_to(f.second(), model));
    case Op::implication: return Formula::implication(relativize_to(f.first(), model), relativize_to(f.second(), model));
    case Op::biconditional:
      return Formula::biconditional(relativize_to(f.first(), model), relativize_to(f.second(), model));
    case Op::forall:
      return Formula::forall(f.variable(),
                             Formula::implication(Formula::member(Term::var(f.variable()), Term::var(model)),
                                                  relativize_to(f.first(), model)));
    case Op::exists:
      return Formula::exists(f.variable(),
                             Formula::conjunction(Formula::member(Term::var(f.variable()), Term::var(model)),
                                                  relativize_to(f.first(), model)));
  }
  return f;
}

struct Relativized {
  Formula formula;
  std::string model_constant;
};

inline Relativized relativize(const Formula& f) {
  std::string m = fresh_identifier(f);
  return {relativize_to(f, m), m};
}

// ---- boolean-valued semantics ---------------------------------------------------

/// The declared finite range of quantifiers: an ordered list of named P-names.
template <class W>
struct NameContext {
  std::vector<std::pair<std::string, Name<W>>> names;

  static NameContext from_table(const NameTable<W>& table) { return {table.entries()}; }

  std::optional<std::size_t> index_of(const std::string& id) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].first == id) return i;
    }
    return std::nullopt;
  }
};

namespace detail {

inline void check_weights(const Name<BAElement>& n, const FinBoolAlg& alg, std::set<const void*>& seen) {
  if (!seen.insert(n.identity()).second) return;
  for (const auto& [child, weight] : n.entries()) {
    if (!alg.owns(weight)) throw precondition_error("name weight belongs to another algebra");
    check_weights(child, alg, seen);
  }
}

} // namespace detail

/**
 * Truth values [[φ]] in a finite (hence complete) algebra. Atomic clauses:
 *   [[m ∈ n]] = ⋁_{(n',q) ∈ n} (q ∧ [[m = n']])
 *   [[m ⊆ n]] = ⋀_{(m',p) ∈ m} (¬p ∨ [[m' ∈ n]])
 *   [[m = n]] = [[m ⊆ n]] ∧ [[n ⊆ m]]
 * Connectives are the algebra operations; ∃/∀ are sup/inf over the context.
 * HF literals are read as check names.
 */
class BooleanValuation {
public:
  BooleanValuation(FinBoolAlg alg, NameContext<BAElement> ctx)
      : alg_(std::move(alg)), ctx_(std::move(ctx)), checks_(alg_.one()) {
    if (alg_.is_degenerate()) throw precondition_error("truth values need a nondegenerate algebra");
    std::set<const void*> seen;
    std::set<std::string> ids;
    for (const auto& [id, n] : ctx_.names) {
      if (!ids.insert(id).second) throw input_error("duplicate name '" + id + "' in context");
      detail::check_weights(n, alg_, seen);
    }
  }

  const FinBoolAlg& algebra() const noexcept { return alg_; }

  BAElement operator()(const Formula& f) {
    for (const auto& id : free_identifiers(f)) {
      if (!ctx_.index_of(id)) throw input_error("name '" + id + "' is not in the context");
    }
    memo_.clear();
    return value(f);
  }

  BAElement member(const Name<BAElement>& m, const Name<BAElement>& n) {
    auto key = std::pair{m.identity(), n.identity()};
    if (auto it = in_memo_.find(key); it != in_memo_.end()) return it->second;
    BAElement acc = alg_.zero();
    for (const auto& [child, q] : n.entries()) acc = alg_.join(acc, alg_.meet(q, equal(m, child)));
    in_memo_.emplace(key, acc);
    return acc;
  }

  BAElement subset(const Name<BAElement>& m, const Name<BAElement>& n) {
    auto key = std::pair{m.identity(), n.identity()};
    if (auto it = sub_memo_.find(key); it != sub_memo_.end()) return it->second;
    BAElement acc = alg_.one();
    for (const auto& [child, p] : m.entries()) acc = alg_.meet(acc, alg_.join(alg_.complement(p), member(child, n)));
    sub_memo_.emplace(key, acc);
    return acc;
  }

  BAElement equal(const Name<BAElement>& m, const Name<BAElement>& n) {
    return alg_.meet(subset(m, n), subset(n, m));
  }

private:
  Name<BAElement> name_of(const Term& t) {
    if (!t.is_ident()) return checks_(t.literal);
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == t.ident) return ctx_.names[it->second].second;
    }
    auto i = ctx_.index_of(t.ident);
    if (!i) throw input_error("name '" + t.ident + "' at position " + std::to_string(t.position) + " is not in the context");
    return ctx_.names[*i].second;
  }

  BAElement value(const Formula& f) {
    switch (f.op()) {
      case Op::member: return member(name_of(f.lhs()), name_of(f.rhs()));
      case Op::equal: return equal(name_of(f.lhs()), name_of(f.rhs()));
      case Op::negation: return alg_.complement(value(f.first()));
      case Op::conjunction: return alg_.meet(value(f.first()), value(f.second()));
      case Op::disjunction: return alg_.join(value(f.first()), value(f.second()));
      case Op::implication: return alg_.join(alg_.complement(value(f.first())), value(f.second()));
      case Op::biconditional: {
        const BAElement a = value(f.first());
        const BAElement b = value(f.second());
        return alg_.join(alg_.meet(a, b), alg_.meet(alg_.complement(a), alg_.complement(b)));
      }
      case Op::forall:
      case Op::exists: break;
    }
    if (ctx_.index_of(f.variable())) throw input_error("variable '" + f.variable() + "' shadows a context name");
    memo_key key{f.identity(), env_};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const bool universal = f.op() == Op::forall;
    BAElement acc = universal ? alg_.one() : alg_.zero();
    for (std::size_t i = 0; i < ctx_.names.size(); ++i) {
      env_.emplace_back(f.variable(), i);
      const BAElement v = value(f.first());
      env_.pop_back();
      acc = universal ? alg_.meet(acc, v) : alg_.join(acc, v);
    }
    memo_.emplace(std::move(key), acc);
    return acc;
  }

  using pair_key = std::pair<const void*, const void*>;

  FinBoolAlg alg_;
  NameContext<BAElement> ctx_;
  CheckBuilder<BAElement> checks_;
  using environment = std::vector<std::pair<std::string, std::size_t>>;
  using memo_key = std::pair<const void*, environment>;

  environment env_;
  std::map<pair_key, BAElement> in_memo_;
  std::map<pair_key, BAElement> sub_memo_;
  std::map<memo_key, BAElement> memo_;
};

inline BAElement bval(const Formula& f, const FinBoolAlg& alg, const NameContext<BAElement>& ctx) {
  return BooleanValuation(alg, ctx)(f);
}

/// p ⊩ φ iff p ≤ [[φ]]. p must be nonzero.
inline bool forces(const BAElement& p, const Formula& f, const FinBoolAlg& alg, const NameContext<BAElement>& ctx) {
  alg.check(p);
  if (p.is_zero()) throw precondition_error("0 is not a forcing condition");
  return alg.leq(p, bval(f, alg, ctx));
}

/**
 * M[G] ⊨ φ with the quantifier range cut down to the context: names become
 * their values under G, quantifiers range over {n^G : n in ctx}.
 */
template <class W>
bool models_extension(const NameContext<W>& ctx, const FilterView<W>& g, const Formula& f) {
  Evaluator<W> ev(g);
  std::map<std::string, HFSet> constants;
  std::vector<HFSet> values;
  for (const auto& [id, n] : ctx.names) {
    HFSet v = ev(n);
    constants.emplace(id, v);
    values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return evaluate_classical(f, std::move(values), std::move(constants));
}

/**
 * The definition of forcing checked directly: M[G] ⊨ φ for every ultrafilter
 * G containing p. In a finite algebra every ultrafilter is generic.
 */
inline bool forces_by_ultrafilters(const BAElement& p, const Formula& f, const FinBoolAlg& alg,
                                   const NameContext<BAElement>& ctx,
                                   const std::vector<SubsetPredicate>& all_ultrafilters) {
  alg.check(p);
  if (p.is_zero()) throw precondition_error("0 is not a forcing condition");
  for (const auto& u : all_ultrafilters) {
    if (u.contains(p) && !models_extension(ctx, filter_view(u), f)) return false;
  }
  return true;
}

inline bool forces_by_ultrafilters(const BAElement& p, const Formula& f, const FinBoolAlg& alg,
                                   const NameContext<BAElement>& ctx) {
  return forces_by_ultrafilters(p, f, alg, ctx, ultrafilters(alg));
}

} // namespace forcing

#endif
