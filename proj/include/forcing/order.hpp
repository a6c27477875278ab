#ifndef FORCING_ORDER_HPP
#define FORCING_ORDER_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boolalg.hpp"
#include "errors.hpp"

namespace forcing {

/// The interface shared by explicit finite posets, B∖{0}, and the Cohen poset.
template <class P>
concept poset = requires(const P& p, const typename P::element_type& x) {
  { p.leq(x, x) } -> std::convertible_to<bool>;
  { p.compatible(x, x) } -> std::convertible_to<bool>;
  { p.contains(x) } -> std::convertible_to<bool>;
  { p.describe(x) } -> std::convertible_to<std::string>;
};

/// A poset whose elements can be listed.
template <class P>
concept finite_poset = poset<P> && requires(const P& p) {
  { p.elements() } -> std::convertible_to<std::vector<typename P::element_type>>;
};

/**
 * An explicit finite partial order on labelled points (at most 64).
 * Elements are point indices. The relation is stored as, for each point,
 * the bit set of points below it.
 */
class FinPoset {
public:
  using element_type = std::size_t;
  using mask_type = std::uint64_t;
  static constexpr std::size_t max_points = 64;

  /// Takes the reflexive-transitive closure of `leq_pairs` ((a, b) means
  /// a ≤ b) and rejects the result if it is not antisymmetric.
  FinPoset(std::vector<std::string> labels,
           const std::vector<std::pair<std::string, std::string>>& leq_pairs)
      : labels_(std::move(labels)) {
    init_points();
    for (const auto& [a, b] : leq_pairs) down_[index_of(b)] |= bit(index_of(a));
    close_and_validate();
  }

  /// Same, with pairs given by index.
  FinPoset(std::vector<std::string> labels,
           const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs)
      : labels_(std::move(labels)) {
    init_points();
    for (const auto& [a, b] : leq_pairs) {
      if (a >= size() || b >= size()) throw input_error("poset pair index out of range");
      down_[b] |= bit(a);
    }
    close_and_validate();
  }

  /// Unlabelled points named "0", "1", ...
  static FinPoset from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return FinPoset(std::move(labels), leq_pairs);
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(element_type p) const { return labels_.at(p); }

  std::size_t index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw input_error("unknown poset element '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::vector<element_type> elements() const {
    std::vector<element_type> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = i;
    return out;
  }

  bool contains(element_type p) const noexcept { return p < size(); }
  bool leq(element_type p, element_type q) const { return (down_.at(q) & bit(p)) != 0; }

  /// ↓p as a bit set.
  mask_type down(element_type p) const { return down_.at(p); }
  /// ↑p as a bit set.
  mask_type up(element_type p) const {
    mask_type out = 0;
    for (std::size_t q = 0; q < size(); ++q) {
      if (leq(p, q)) out |= bit(q);
    }
    return out;
  }

  /// Some r with r ≤ p and r ≤ q, found by exhaustive search.
  bool compatible(element_type p, element_type q) const { return (down_.at(p) & down_.at(q)) != 0; }

  std::string describe(element_type p) const { return label(p); }

  static constexpr mask_type bit(std::size_t i) noexcept { return mask_type{1} << i; }

private:
  void init_points() {
    if (labels_.size() > max_points) throw input_error("poset too large");
    std::vector<std::string> sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw input_error("duplicate poset element label");
    }
    down_.assign(labels_.size(), 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) down_[i] = bit(i);
  }

  void close_and_validate() {
    // Warshall on the down-sets
    for (std::size_t k = 0; k < size(); ++k) {
      for (std::size_t i = 0; i < size(); ++i) {
        if (down_[i] & bit(k)) down_[i] |= down_[k];
      }
    }
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = i + 1; j < size(); ++j) {
        if (leq(i, j) && leq(j, i)) {
          throw input_error("poset relation is not antisymmetric: " + labels_[i] + " and " +
                            labels_[j]);
        }
      }
    }
  }

  std::vector<std::string> labels_;
  std::vector<mask_type> down_;
};

/// B∖{0} ordered as in B.
class AlgebraPoset {
public:
  using element_type = BAElement;

  explicit AlgebraPoset(FinBoolAlg alg) : alg_(std::move(alg)) {
    if (alg_.is_degenerate()) throw precondition_error("the one-element algebra has no forcing poset");
  }

  const FinBoolAlg& algebra() const noexcept { return alg_; }

  std::vector<BAElement> elements() const {
    auto all = alg_.elements();
    return {all.begin() + 1, all.end()};
  }
  bool contains(const BAElement& x) const { return alg_.owns(x) && !x.is_zero(); }
  bool leq(const BAElement& x, const BAElement& y) const { return alg_.leq(x, y); }
  bool compatible(const BAElement& x, const BAElement& y) const { return !alg_.meet(x, y).is_zero(); }
  std::string describe(const BAElement& x) const { return forcing::describe(x); }

private:
  FinBoolAlg alg_;
};

// ---- predicates ------------------------------------------------------------

template <poset P>
bool strictly_below(const P& poset, const typename P::element_type& x, const typename P::element_type& y) {
  return poset.leq(x, y) && !poset.leq(y, x);
}

/// First (x, y) with x ≱ y such that every z ≤ y is compatible with x;
/// nullopt when the poset is separative.
template <finite_poset P>
std::optional<std::pair<typename P::element_type, typename P::element_type>>
separativity_violation(const P& poset) {
  const auto xs = poset.elements();
  for (const auto& x : xs) {
    for (const auto& y : xs) {
      if (poset.leq(y, x)) continue;
      bool found = false;
      for (const auto& z : xs) {
        if (poset.leq(z, y) && !poset.compatible(z, x)) {
          found = true;
          break;
        }
      }
      if (!found) return std::pair{x, y};
    }
  }
  return std::nullopt;
}

template <finite_poset P>
bool is_separative(const P& poset) {
  return !separativity_violation(poset).has_value();
}

/// ∀x ∃y (y < x).
template <finite_poset P>
bool is_atomless(const P& poset) {
  const auto xs = poset.elements();
  for (const auto& x : xs) {
    bool below = false;
    for (const auto& y : xs) {
      if (strictly_below(poset, y, x)) {
        below = true;
        break;
      }
    }
    if (!below) return false;
  }
  return true;
}

/// ∀p ∃q (q ∈ D and q ≤ p).
template <finite_poset P>
bool is_dense(const std::vector<typename P::element_type>& dense, const P& poset) {
  for (const auto& p : poset.elements()) {
    bool met = std::any_of(dense.begin(), dense.end(),
                           [&](const auto& q) { return poset.contains(q) && poset.leq(q, p); });
    if (!met) return false;
  }
  return true;
}

/// D' = {x ∈ P : ∃y (x ≤ y and y ∈ D)} for a dense P ⊆ B∖{0}.
inline std::vector<BAElement> transfer_dense(const std::vector<BAElement>& dense_in_b,
                                             const std::vector<BAElement>& sub,
                                             const FinBoolAlg& alg) {
  AlgebraPoset b(alg);
  for (const auto& p : sub) {
    if (!b.contains(p)) throw precondition_error("transfer_dense: subposet contains 0 or a foreign element");
  }
  if (!is_dense(sub, b)) throw precondition_error("transfer_dense: subposet is not dense in B without 0");
  std::vector<BAElement> out;
  for (const auto& x : sub) {
    if (std::any_of(dense_in_b.begin(), dense_in_b.end(), [&](const BAElement& y) { return alg.leq(x, y); })) {
      out.push_back(x);
    }
  }
  return out;
}

// ---- dense oracles and the generic filter engine ---------------------------

/**
 * A dense set given constructively: `member` tests membership and
 * `refine(p)` returns some q ≤ p in the set (nullopt means the oracle
 * failed). Refinement must be deterministic.
 */
template <class E>
struct DenseOracle {
  std::string name;
  std::function<bool(const E&)> member;
  std::function<std::optional<E>(const E&)> refine;
};

/// Wraps an explicit subset: refine keeps p when p ∈ D, else takes the first
/// listed q ∈ D below p.
template <poset P>
DenseOracle<typename P::element_type> set_oracle(const P& poset, std::vector<typename P::element_type> dense,
                                                 std::string name) {
  using E = typename P::element_type;
  auto member = [dense](const E& p) { return std::find(dense.begin(), dense.end(), p) != dense.end(); };
  auto refine = [poset, dense, member](const E& p) -> std::optional<E> {
    if (member(p)) return p;
    for (const auto& q : dense) {
      if (poset.leq(q, p)) return q;
    }
    return std::nullopt;
  };
  return {std::move(name), member, refine};
}

/// D_p = {x : x ≤ p or x ≤ ¬p}; refine(x) = x∧p if nonzero, else x∧¬p.
inline DenseOracle<BAElement> dp_oracle(const FinBoolAlg& alg, const BAElement& p) {
  if (alg.is_degenerate()) throw precondition_error("D_p needs a nondegenerate algebra");
  alg.check(p);
  const BAElement not_p = alg.complement(p);
  auto member = [alg, p, not_p](const BAElement& x) { return alg.leq(x, p) || alg.leq(x, not_p); };
  auto refine = [alg, p, not_p](const BAElement& x) -> std::optional<BAElement> {
    if (x.is_zero()) throw precondition_error("D_p refine: 0 is not a condition");
    const BAElement with_p = alg.meet(x, p);
    if (!with_p.is_zero()) return with_p;
    return alg.meet(x, not_p);
  };
  return {"D_p[" + describe(p) + "]", member, refine};
}

template <class E>
struct ChainStep {
  std::size_t oracle_index;
  std::string oracle_name;
  E input;
  E output;
};

/**
 * The filter generated by a descending chain p_0 ≥ p_1 ≥ ... ≥ p_k:
 * x ∈ G iff x ≥ p_i for some i.
 */
template <poset P>
class GenericFilter {
public:
  using element_type = typename P::element_type;

  GenericFilter(P poset, std::vector<element_type> chain, std::vector<ChainStep<element_type>> trace)
      : poset_(std::move(poset)), chain_(std::move(chain)), trace_(std::move(trace)) {}

  const P& carrier() const noexcept { return poset_; }
  const std::vector<element_type>& chain() const noexcept { return chain_; }
  const std::vector<ChainStep<element_type>>& trace() const noexcept { return trace_; }
  const element_type& last() const { return chain_.back(); }

  bool contains(const element_type& x) const {
    return std::any_of(chain_.begin(), chain_.end(), [&](const element_type& p) { return poset_.leq(p, x); });
  }

private:
  P poset_;
  std::vector<element_type> chain_;
  std::vector<ChainStep<element_type>> trace_;
};

/**
 * Descends through the oracles in list order: p_0 = refine_0(start),
 * p_{i+1} = refine_{i+1}(p_i). With no oracles the chain is [start].
 * Throws oracle_error naming the first oracle whose refinement is missing,
 * not below its input, or not a member.
 */
template <poset P>
GenericFilter<P> build_generic(const P& poset, const typename P::element_type& start,
                               const std::vector<DenseOracle<typename P::element_type>>& oracles) {
  using E = typename P::element_type;
  if (!poset.contains(start)) throw precondition_error("build_generic: start is not an element of the poset");
  std::vector<E> chain;
  std::vector<ChainStep<E>> trace;
  if (oracles.empty()) {
    chain.push_back(start);
    return GenericFilter<P>(poset, std::move(chain), std::move(trace));
  }
  E current = start;
  for (std::size_t i = 0; i < oracles.size(); ++i) {
    const auto& oracle = oracles[i];
    std::optional<E> next = oracle.refine(current);
    auto fail = [&](const std::string& why) {
      throw oracle_error("oracle " + std::to_string(i) + " (" + oracle.name + ") " + why +
                             " at " + poset.describe(current),
                         i, oracle.name);
    };
    if (!next) fail("found no refinement");
    if (!poset.contains(*next)) fail("returned a non-element");
    if (!poset.leq(*next, current)) fail("returned an element not below its input");
    if (!oracle.member(*next)) fail("returned a non-member");
    trace.push_back({i, oracle.name, current, *next});
    chain.push_back(*next);
    current = *next;
  }
  return GenericFilter<P>(poset, std::move(chain), std::move(trace));
}

/// The members of a filter over B∖{0} as a subset of B.
inline SubsetPredicate filter_members(const GenericFilter<AlgebraPoset>& g) {
  const auto& alg = g.carrier().algebra();
  std::vector<BAElement> out;
  for (const auto& x : alg.elements()) {
    if (!x.is_zero() && g.contains(x)) out.push_back(x);
  }
  return SubsetPredicate(alg, std::move(out));
}

inline bool is_filter_on(const GenericFilter<AlgebraPoset>& g, const FinBoolAlg& alg) {
  if (!(g.carrier().algebra() == alg)) throw precondition_error("filter is over another algebra");
  return is_filter(filter_members(g));
}

} // namespace forcing

#endif
