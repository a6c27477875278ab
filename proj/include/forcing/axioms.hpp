#ifndef FORCING_AXIOMS_HPP
#define FORCING_AXIOMS_HPP

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"

namespace forcing {

// Axioms of ZF as sentences of the membership language. Choice is omitted.
// Foundation is kept in its unguarded form, so it fails in any model that
// contains the empty set. Infinity spells out "∅ ∈ y" and "x ∪ {x} ∈ y"
// with extra quantifiers since the grammar has no set-builder terms.

inline const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names{"extensionality", "pairing", "union",
                                              "powerset",       "infinity", "foundation"};
  return names;
}

inline std::string axiom_text(std::string_view name) {
  if (name == "extensionality") return "forall x forall y (x = y <-> (forall z (z in x <-> z in y)))";
  if (name == "pairing") return "forall x forall y exists z forall w (w in z <-> (w = x or w = y))";
  if (name == "union") return "forall x exists y forall z (z in y <-> (exists w (z in w and w in x)))";
  if (name == "powerset") return "forall x exists y forall z (z in y <-> (forall w (w in z -> w in x)))";
  if (name == "infinity") {
    return "exists y ((exists e (e in y and (forall u not u in e))) and "
           "(forall x (x in y -> (exists s (s in y and (forall u (u in s <-> (u in x or u = x))))))))";
  }
  if (name == "foundation") return "forall x exists y (y in x and (forall z (z in x -> not z in y)))";
  throw input_error("unknown axiom '" + std::string(name) + "'");
}

inline Formula axiom(std::string_view name) { return parse(axiom_text(name)); }

namespace detail {

inline void require_free_within(const Formula& phi, const std::set<std::string>& allowed, std::string_view schema) {
  for (const auto& id : free_identifiers(phi)) {
    if (!allowed.contains(id)) {
      throw input_error(std::string(schema) + " instance: '" + id + "' may not occur free in the formula");
    }
  }
}

} // namespace detail

/// ∀x ∃y ∀z (z ∈ y ↔ (z ∈ x ∧ φ(z))). φ may only have z free.
inline Formula separation(const Formula& phi) {
  detail::require_free_within(phi, {"z"}, "separation");
  return parse("forall x exists y forall z (z in y <-> (z in x and (" + print(phi) + ")))");
}

/// ∀x ∃y ∀z (z ∈ y ↔ ∃w (w ∈ x ∧ φ(w,z))). φ may only have w and z free.
inline Formula replacement(const Formula& phi) {
  detail::require_free_within(phi, {"w", "z"}, "replacement");
  return parse("forall x exists y forall z (z in y <-> (exists w (w in x and (" + print(phi) + "))))");
}

} // namespace forcing

#endif
