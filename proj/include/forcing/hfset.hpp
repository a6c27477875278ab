#ifndef FORCING_HFSET_HPP
#define FORCING_HFSET_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace forcing {

/**
 * A hereditarily finite set in canonical form.
 *
 * Elements are kept deduplicated and sorted by the recursive lexicographic
 * order on element lists, so two values are extensionally equal exactly
 * when they are structurally equal. Values are immutable and share their
 * representation; copying is a reference-count bump.
 */
class HFSet {
  struct node {
    std::vector<HFSet> elements;
    std::size_t rank = 0;
    std::size_t hash = 0;
  };

public:
  /// The empty set.
  HFSet() : node_(empty_node()) {}

  /// Builds {xs...}; duplicates are removed and the result is normalized.
  static HFSet of(std::vector<HFSet> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return from_sorted(std::move(xs));
  }

  static HFSet empty() { return HFSet(); }
  static HFSet singleton(const HFSet& x) { return from_sorted({x}); }
  static HFSet unordered_pair(const HFSet& x, const HFSet& y) { return of({x, y}); }

  const std::vector<HFSet>& elements() const noexcept { return node_->elements; }
  std::size_t cardinality() const noexcept { return node_->elements.size(); }
  bool is_empty() const noexcept { return node_->elements.empty(); }

  /// rank(∅) = 0, rank(x) = 1 + max rank of its elements. Cached.
  std::size_t rank() const noexcept { return node_->rank; }
  std::size_t hash() const noexcept { return node_->hash; }

  bool contains(const HFSet& y) const {
    return std::binary_search(elements().begin(), elements().end(), y);
  }

  bool is_subset_of(const HFSet& other) const {
    return std::includes(other.elements().begin(), other.elements().end(),
                         elements().begin(), elements().end());
  }

  HFSet with(const HFSet& y) const {
    if (contains(y)) return *this;
    auto xs = elements();
    xs.insert(std::upper_bound(xs.begin(), xs.end(), y), y);
    return from_sorted(std::move(xs));
  }

  friend bool operator==(const HFSet& a, const HFSet& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->rank != b.node_->rank) return false;
    return a.elements() == b.elements();
  }

  friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    const auto& xs = a.elements();
    const auto& ys = b.elements();
    const std::size_t n = std::min(xs.size(), ys.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = xs[i] <=> ys[i]; c != 0) return c;
    }
    return xs.size() <=> ys.size();
  }

private:
  explicit HFSet(std::shared_ptr<const node> n) : node_(std::move(n)) {}

  static const std::shared_ptr<const node>& empty_node() {
    static const std::shared_ptr<const node> e = std::make_shared<const node>();
    return e;
  }

  static HFSet from_sorted(std::vector<HFSet> xs) {
    if (xs.empty()) return HFSet();
    auto n = std::make_shared<node>();
    std::size_t rank = 0;
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ xs.size();
    for (const auto& x : xs) {
      rank = std::max(rank, x.rank() + 1);
      h = (h * 0x100000001b3ULL) ^ (x.hash() + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2));
    }
    n->elements = std::move(xs);
    n->rank = rank;
    n->hash = h;
    return HFSet(std::shared_ptr<const node>(std::move(n)));
  }

  std::shared_ptr<const node> node_;
};

inline HFSet normalize(const HFSet& x) { return HFSet::of(x.elements()); }

/// n = {0, ..., n-1}.
inline HFSet von_neumann(std::size_t n) {
  std::vector<HFSet> xs;
  xs.reserve(n);
  HFSet current;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(current);
    current = HFSet::of(xs);
  }
  return current;
}

/// Inverse of von_neumann; nullopt when x is not a finite von Neumann ordinal.
inline std::optional<std::size_t> as_natural(const HFSet& x) {
  const std::size_t n = x.cardinality();
  if (x == von_neumann(n)) return n;
  return std::nullopt;
}

/// Kuratowski pair {{x},{x,y}}.
inline HFSet kpair(const HFSet& x, const HFSet& y) {
  return HFSet::unordered_pair(HFSet::singleton(x), HFSet::unordered_pair(x, y));
}

inline std::optional<std::pair<HFSet, HFSet>> decode_kpair(const HFSet& p) {
  const auto& parts = p.elements();
  if (parts.size() == 1) {
    const auto& only = parts.front();
    if (only.cardinality() != 1) return std::nullopt;
    return std::pair{only.elements().front(), only.elements().front()};
  }
  if (parts.size() != 2) return std::nullopt;
  const HFSet* single = nullptr;
  const HFSet* doubleton = nullptr;
  for (const auto& part : parts) {
    if (part.cardinality() == 1) single = &part;
    else if (part.cardinality() == 2) doubleton = &part;
  }
  if (single == nullptr || doubleton == nullptr) return std::nullopt;
  const HFSet& x = single->elements().front();
  if (!doubleton->contains(x)) return std::nullopt;
  const HFSet& y = doubleton->elements()[0] == x ? doubleton->elements()[1]
                                                  : doubleton->elements()[0];
  return std::pair{x, y};
}

inline HFSet set_union(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> xs;
  xs.reserve(a.cardinality() + b.cardinality());
  std::set_union(a.elements().begin(), a.elements().end(), b.elements().begin(),
                 b.elements().end(), std::back_inserter(xs));
  return HFSet::of(std::move(xs));
}

/// ⋃x.
inline HFSet big_union(const HFSet& x) {
  HFSet result;
  for (const auto& y : x.elements()) result = set_union(result, y);
  return result;
}

inline HFSet powerset(const HFSet& x) {
  const auto& xs = x.elements();
  if (xs.size() >= 20) throw input_error("powerset: set too large to enumerate");
  std::vector<HFSet> subsets;
  subsets.reserve(std::size_t{1} << xs.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << xs.size()); ++mask) {
    std::vector<HFSet> members;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(xs[i]);
    }
    subsets.push_back(HFSet::of(std::move(members)));
  }
  return HFSet::of(std::move(subsets));
}

/// {x ∈ domain : x ∉ f(x)}. Throws when f is undefined somewhere on domain.
inline HFSet diagonal(const HFSet& domain, const std::map<HFSet, HFSet>& f) {
  std::vector<HFSet> out;
  for (const auto& x : domain.elements()) {
    auto it = f.find(x);
    if (it == f.end()) throw precondition_error("diagonal: function is not total on the domain");
    if (!it->second.contains(x)) out.push_back(x);
  }
  return HFSet::of(std::move(out));
}

/// Least transitive set containing every element of x.
inline HFSet transitive_closure(const HFSet& x) {
  std::set<HFSet> seen;
  std::vector<HFSet> stack(x.elements().begin(), x.elements().end());
  while (!stack.empty()) {
    HFSet y = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(y).second) continue;
    for (const auto& z : y.elements()) stack.push_back(z);
  }
  return HFSet::of(std::vector<HFSet>(seen.begin(), seen.end()));
}

inline bool is_transitive(const HFSet& x) {
  for (const auto& y : x.elements()) {
    if (!y.is_subset_of(x)) return false;
  }
  return true;
}

// ---- literal syntax: [] is ∅, [[],[[]]] is 2 -------------------------------

inline void print_literal(std::ostream& os, const HFSet& x) {
  os << '[';
  bool first = true;
  for (const auto& y : x.elements()) {
    if (!first) os << ',';
    first = false;
    print_literal(os, y);
  }
  os << ']';
}

inline std::string to_literal(const HFSet& x) {
  std::ostringstream os;
  print_literal(os, x);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const HFSet& x) {
  print_literal(os, x);
  return os;
}

namespace detail {

inline void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() &&
         (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) {
    ++pos;
  }
}

inline HFSet parse_hf(std::string_view text, std::size_t& pos, std::size_t base) {
  skip_space(text, pos);
  if (pos >= text.size() || text[pos] != '[') {
    throw parse_error("expected '[' in set literal", base + pos);
  }
  ++pos;
  std::vector<HFSet> xs;
  skip_space(text, pos);
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
    return HFSet();
  }
  for (;;) {
    xs.push_back(parse_hf(text, pos, base));
    skip_space(text, pos);
    if (pos >= text.size()) throw parse_error("unterminated set literal", base + pos);
    if (text[pos] == ',') {
      ++pos;
      continue;
    }
    if (text[pos] == ']') {
      ++pos;
      break;
    }
    throw parse_error("expected ',' or ']' in set literal", base + pos);
  }
  return HFSet::of(std::move(xs));
}

} // namespace detail

/// Parses one literal starting at `pos` (advanced past it). `base` is added
/// to reported error positions when the literal is embedded in larger text.
inline HFSet parse_literal_at(std::string_view text, std::size_t& pos, std::size_t base = 0) {
  return detail::parse_hf(text, pos, base);
}

inline HFSet parse_literal(std::string_view text) {
  std::size_t pos = 0;
  HFSet x = detail::parse_hf(text, pos, 0);
  detail::skip_space(text, pos);
  if (pos != text.size()) throw parse_error("trailing characters after set literal", pos);
  return x;
}

} // namespace forcing

template <>
struct std::hash<forcing::HFSet> {
  std::size_t operator()(const forcing::HFSet& x) const noexcept { return x.hash(); }
};

#endif
