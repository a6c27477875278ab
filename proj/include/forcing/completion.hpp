#ifndef FORCING_COMPLETION_HPP
#define FORCING_COMPLETION_HPP

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "boolalg.hpp"
#include "errors.hpp"
#include "order.hpp"

namespace forcing {

/**
 * The regular open sets of a finite poset under the topology whose opens
 * are the down-sets. Closure is upward closure, interior of V is
 * {p : ↓p ⊆ V}, and U is regular when int(cl(U)) = U. Values are bit sets
 * of poset points. Operations are the native ones: meet is ∩, join is
 * int(cl(∪)), complement is int of the set complement.
 */
class RegularOpenAlgebra {
public:
  using value_type = FinPoset::mask_type;
  static constexpr std::size_t max_points = 20;

  explicit RegularOpenAlgebra(FinPoset poset) : poset_(std::move(poset)) {
    if (poset_.size() > max_points) throw input_error("poset too large for regular-open enumeration");
    full_ = poset_.size() == 0 ? 0 : (~value_type{0} >> (64 - poset_.size()));
    for (value_type u = 0; u <= full_; ++u) {
      if (is_open(u) && interior(closure(u)) == u) opens_.push_back(u);
      if (u == full_) break;
    }
  }

  const FinPoset& poset() const noexcept { return poset_; }

  std::vector<value_type> elements() const { return opens_; }
  value_type zero() const { return 0; }
  value_type one() const { return full_; }
  value_type meet(value_type u, value_type v) const { return u & v; }
  value_type join(value_type u, value_type v) const { return interior(closure(u | v)); }
  value_type complement(value_type u) const { return interior(full_ & ~u); }
  bool leq(value_type u, value_type v) const { return (u & ~v) == 0; }
  bool equal(value_type u, value_type v) const { return u == v; }

  bool is_open(value_type u) const {
    for (std::size_t p = 0; p < poset_.size(); ++p) {
      if ((u & FinPoset::bit(p)) && (poset_.down(p) & ~u)) return false;
    }
    return true;
  }

  /// ↑U
  value_type closure(value_type u) const {
    value_type out = 0;
    for (std::size_t p = 0; p < poset_.size(); ++p) {
      if (u & FinPoset::bit(p)) out |= poset_.up(p);
    }
    return out;
  }

  /// {p : ↓p ⊆ V}
  value_type interior(value_type v) const {
    value_type out = 0;
    for (std::size_t p = 0; p < poset_.size(); ++p) {
      if ((poset_.down(p) & ~v) == 0) out |= FinPoset::bit(p);
    }
    return out;
  }

  /// int(cl(↓p))
  value_type regular_open_of(std::size_t p) const { return interior(closure(poset_.down(p))); }

  std::string describe(value_type u) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t p = 0; p < poset_.size(); ++p) {
      if (!(u & FinPoset::bit(p))) continue;
      if (!first) out += ",";
      first = false;
      out += poset_.label(p);
    }
    return out + "}";
  }

private:
  FinPoset poset_;
  value_type full_ = 0;
  std::vector<value_type> opens_;
};

/**
 * Completion of a poset: the regular-open algebra rebuilt as a FinBoolAlg
 * over its atoms (the minimal nonzero regular opens, labelled by their
 * points joined with '+'), and the embedding p ↦ int(cl(↓p)).
 */
struct Completion {
  RegularOpenAlgebra regular_opens;
  FinBoolAlg algebra;
  std::vector<BAElement> embedding; // indexed by poset point
  std::vector<FinPoset::mask_type> atom_sets;

  BAElement to_element(FinPoset::mask_type u) const {
    BAElement::mask_type bits = 0;
    for (std::size_t i = 0; i < atom_sets.size(); ++i) {
      if ((atom_sets[i] & ~u) == 0) bits |= BAElement::mask_type{1} << i;
    }
    return algebra.element(bits);
  }

  FinPoset::mask_type to_regular_open(const BAElement& x) const {
    FinPoset::mask_type u = 0;
    for (std::size_t i = 0; i < atom_sets.size(); ++i) {
      if (x.bits() & (BAElement::mask_type{1} << i)) u = regular_opens.join(u, atom_sets[i]);
    }
    return u;
  }
};

/// Builds the regular-open algebra and embedding without checking separativity.
inline Completion regular_open_completion_unchecked(const FinPoset& poset) {
  if (poset.size() == 0) throw precondition_error("completion of the empty poset");
  RegularOpenAlgebra ro(poset);
  std::vector<FinPoset::mask_type> atoms;
  for (auto u : ro.elements()) {
    if (u == 0) continue;
    bool minimal = true;
    for (auto v : ro.elements()) {
      if (v != 0 && v != u && ro.leq(v, u)) {
        minimal = false;
        break;
      }
    }
    if (minimal) atoms.push_back(u);
  }
  std::vector<std::string> labels;
  for (auto a : atoms) {
    std::string label;
    for (std::size_t p = 0; p < poset.size(); ++p) {
      if (a & FinPoset::bit(p)) label += (label.empty() ? "" : "+") + poset.label(p);
    }
    labels.push_back(label);
  }
  Completion c{ro, FinBoolAlg(labels), {}, atoms};
  for (std::size_t p = 0; p < poset.size(); ++p) c.embedding.push_back(c.to_element(ro.regular_open_of(p)));
  return c;
}

/// Outcome of checking the embedding's characterizing properties.
struct CompletionAudit {
  bool atom_representation_bijective = false; // regular opens ↔ atom subsets
  bool operations_agree = false;              // native ops match the rebuilt algebra
  bool injective = false;
  bool order_preserving = false;
  bool order_reflecting = false;
  bool incompatibility_preserved = false;     // p ⊥ q iff e(p) ∧ e(q) = 0
  bool dense_image = false;

  bool all() const noexcept {
    return atom_representation_bijective && operations_agree && injective && order_preserving &&
           order_reflecting && incompatibility_preserved && dense_image;
  }

  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    if (!atom_representation_bijective) out.push_back("atom representation");
    if (!operations_agree) out.push_back("operations");
    if (!injective) out.push_back("injective");
    if (!order_preserving) out.push_back("order-preserving");
    if (!order_reflecting) out.push_back("order-reflecting");
    if (!incompatibility_preserved) out.push_back("incompatibility-preserving");
    if (!dense_image) out.push_back("dense image");
    return out;
  }
};

inline CompletionAudit audit_completion(const Completion& c) {
  CompletionAudit a;
  const auto& ro = c.regular_opens;
  const auto& poset = ro.poset();
  const auto opens = ro.elements();

  a.atom_representation_bijective = opens.size() == c.algebra.size();
  for (auto u : opens) {
    if (c.to_regular_open(c.to_element(u)) != u) a.atom_representation_bijective = false;
  }

  a.operations_agree = true;
  for (auto u : opens) {
    const BAElement x = c.to_element(u);
    if (c.to_element(ro.complement(u)) != c.algebra.complement(x)) a.operations_agree = false;
    for (auto v : opens) {
      const BAElement y = c.to_element(v);
      if (c.to_element(ro.meet(u, v)) != c.algebra.meet(x, y)) a.operations_agree = false;
      if (c.to_element(ro.join(u, v)) != c.algebra.join(x, y)) a.operations_agree = false;
      if (ro.leq(u, v) != c.algebra.leq(x, y)) a.operations_agree = false;
    }
  }

  a.injective = a.order_preserving = a.order_reflecting = a.incompatibility_preserved = true;
  for (std::size_t p = 0; p < poset.size(); ++p) {
    for (std::size_t q = 0; q < poset.size(); ++q) {
      const auto& ep = c.embedding[p];
      const auto& eq = c.embedding[q];
      if (p != q && ep == eq) a.injective = false;
      const bool le = poset.leq(p, q);
      const bool ele = c.algebra.leq(ep, eq);
      if (le && !ele) a.order_preserving = false;
      if (ele && !le) a.order_reflecting = false;
      if (poset.compatible(p, q) == c.algebra.meet(ep, eq).is_zero()) a.incompatibility_preserved = false;
    }
  }

  a.dense_image = true;
  for (const auto& x : c.algebra.elements()) {
    if (x.is_zero()) continue;
    bool met = std::any_of(c.embedding.begin(), c.embedding.end(),
                           [&](const BAElement& e) { return c.algebra.leq(e, x); });
    if (!met) a.dense_image = false;
  }
  return a;
}

/**
 * Regular-open completion of a nonempty separative poset. Non-separative
 * input is refused with precondition_error whose witness is "(x,y)" and
 * whose message names the embedding properties that would fail.
 */
inline Completion ro_completion(const FinPoset& poset) {
  if (poset.size() == 0) throw precondition_error("completion of the empty poset");
  if (auto bad = separativity_violation(poset)) {
    const std::string witness = "(" + poset.label(bad->first) + "," + poset.label(bad->second) + ")";
    std::string failing;
    for (const auto& f : audit_completion(regular_open_completion_unchecked(poset)).failing()) {
      failing += (failing.empty() ? "" : ", ") + f;
    }
    throw precondition_error("poset is not separative: witness " + witness +
                                 (failing.empty() ? "" : "; embedding would fail: " + failing),
                             witness);
  }
  return regular_open_completion_unchecked(poset);
}

} // namespace forcing

#endif
