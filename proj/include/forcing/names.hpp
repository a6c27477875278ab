#ifndef FORCING_NAMES_HPP
#define FORCING_NAMES_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "boolalg.hpp"
#include "cohen.hpp"
#include "errors.hpp"
#include "hfset.hpp"
#include "order.hpp"

namespace forcing {

/**
 * A P-name: a finite set of (child name, weight) pairs, where weights are
 * carrier elements (BAElement or Condition). Names are immutable and
 * shared, so the child relation is acyclic by construction.
 * rank = 1 + max child rank, 0 for the empty name.
 */
template <class W>
class Name {
  struct node {
    std::vector<std::pair<Name, W>> entries;
    std::size_t rank = 0;
  };

public:
  using weight_type = W;
  using entry = std::pair<Name, W>;

  Name() : node_(std::make_shared<const node>()) {}

  explicit Name(std::vector<entry> entries) {
    auto n = std::make_shared<node>();
    for (auto& e : entries) {
      const bool dup = std::any_of(n->entries.begin(), n->entries.end(), [&](const entry& f) {
        return f.first == e.first && f.second == e.second;
      });
      if (dup) continue;
      n->rank = std::max(n->rank, e.first.rank() + 1);
      n->entries.push_back(std::move(e));
    }
    node_ = std::move(n);
  }

  const std::vector<entry>& entries() const noexcept { return node_->entries; }
  std::size_t rank() const noexcept { return node_->rank; }
  bool is_empty() const noexcept { return node_->entries.empty(); }
  const void* identity() const noexcept { return node_.get(); }

  /// Structural equality: same (child, weight) pairs up to order.
  friend bool operator==(const Name& a, const Name& b) {
    if (a.node_ == b.node_) return true;
    if (a.rank() != b.rank() || a.entries().size() != b.entries().size()) return false;
    for (const auto& e : a.entries()) {
      const bool found = std::any_of(b.entries().begin(), b.entries().end(), [&](const entry& f) {
        return f.second == e.second && f.first == e.first;
      });
      if (!found) return false;
    }
    return true;
  }

private:
  std::shared_ptr<const node> node_;
};

/// Membership test of the filter consulted during evaluation.
template <class W>
using FilterView = std::function<bool(const W&)>;

inline FilterView<BAElement> filter_view(const SubsetPredicate& g) {
  return [g](const BAElement& x) { return g.contains(x); };
}

template <poset P>
FilterView<typename P::element_type> filter_view(const GenericFilter<P>& g) {
  return [g](const typename P::element_type& x) { return g.contains(x); };
}

/// n^G = {m^G : (m,p) ∈ n and p ∈ G}.
template <class W>
class Evaluator {
public:
  explicit Evaluator(FilterView<W> g) : g_(std::move(g)) {}

  HFSet operator()(const Name<W>& n) {
    if (auto it = memo_.find(n.identity()); it != memo_.end()) return it->second;
    std::vector<HFSet> out;
    for (const auto& [child, weight] : n.entries()) {
      if (g_(weight)) out.push_back((*this)(child));
    }
    HFSet value = HFSet::of(std::move(out));
    memo_.emplace(n.identity(), value);
    return value;
  }

private:
  FilterView<W> g_;
  std::unordered_map<const void*, HFSet> memo_;
};

template <class W>
HFSet eval(const Name<W>& n, const FilterView<W>& g) {
  return Evaluator<W>(g)(n);
}

/// x̌ = {(y̌, ⊤) : y ∈ x}. Shares sub-names for repeated subsets.
template <class W>
class CheckBuilder {
public:
  explicit CheckBuilder(W top) : top_(std::move(top)) {}

  Name<W> operator()(const HFSet& x) {
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    std::vector<typename Name<W>::entry> entries;
    for (const auto& y : x.elements()) entries.emplace_back((*this)(y), top_);
    Name<W> n(std::move(entries));
    memo_.emplace(x, n);
    return n;
  }

private:
  W top_;
  std::unordered_map<HFSet, Name<W>> memo_;
};

template <class W>
Name<W> check(const HFSet& x, const W& top) {
  return CheckBuilder<W>(top)(x);
}

/// {(a, ⊤), (b, ⊤)}: denotes {a^G, b^G}.
template <class W>
Name<W> pair_name(const Name<W>& a, const Name<W>& b, const W& top) {
  return Name<W>({{a, top}, {b, top}});
}

// ---- HF encodings of carrier elements ------------------------------------------

/// An algebra element as the set of its atom indices, each a von Neumann natural.
inline HFSet encode_as_hf(const BAElement& x) {
  std::vector<HFSet> out;
  for (std::size_t i = 0; i < 64; ++i) {
    if (x.bits() & (BAElement::mask_type{1} << i)) out.push_back(von_neumann(i));
  }
  return HFSet::of(std::move(out));
}

/// A condition as {((row, column), bit)} with Kuratowski pairs of naturals.
inline HFSet encode_as_hf(const Condition& p) {
  std::vector<HFSet> out;
  for (const auto& [cell, value] : p.entries()) {
    out.push_back(kpair(kpair(von_neumann(cell.row), von_neumann(cell.column)), von_neumann(value)));
  }
  return HFSet::of(std::move(out));
}

inline BAElement decode_element(const HFSet& x, const FinBoolAlg& alg) {
  BAElement::mask_type bits = 0;
  for (const auto& i : x.elements()) {
    auto n = as_natural(i);
    if (!n || *n >= alg.atom_count()) throw input_error("not an encoded element of this algebra: " + to_literal(x));
    bits |= BAElement::mask_type{1} << *n;
  }
  return alg.element(bits);
}

inline Condition decode_condition(const HFSet& x, const CohenPoset& poset) {
  std::vector<Condition::entry> entries;
  for (const auto& e : x.elements()) {
    auto outer = decode_kpair(e);
    if (!outer) throw input_error("not an encoded condition: " + to_literal(x));
    auto cell = decode_kpair(outer->first);
    if (!cell) throw input_error("not an encoded condition: " + to_literal(x));
    auto row = as_natural(cell->first);
    auto col = as_natural(cell->second);
    auto bit = as_natural(outer->second);
    if (!row || !col || !bit || *bit > 1) throw input_error("not an encoded condition: " + to_literal(x));
    entries.push_back({{*row, *col}, static_cast<std::uint8_t>(*bit)});
  }
  return poset.condition(std::move(entries));
}

/// Ẋ = {(p̌, p) : p in the listed fragment}, with p̌ the check name of p's encoding.
template <class W>
Name<W> canonical_generic(const std::vector<W>& fragment, const W& top) {
  if (fragment.empty()) throw precondition_error("canonical_generic: empty element list");
  CheckBuilder<W> checks(top);
  std::vector<typename Name<W>::entry> entries;
  for (const auto& p : fragment) entries.emplace_back(checks(encode_as_hf(p)), p);
  return Name<W>(std::move(entries));
}

/// {x : x ≥ p for some p decoded from `generic_value`}, restricted to `fragment`.
inline std::vector<BAElement> reconstruct_filter(const HFSet& generic_value, const FinBoolAlg& alg,
                                                 const std::vector<BAElement>& fragment) {
  std::vector<BAElement> members;
  for (const auto& e : generic_value.elements()) members.push_back(decode_element(e, alg));
  std::vector<BAElement> out;
  for (const auto& x : fragment) {
    if (std::any_of(members.begin(), members.end(), [&](const BAElement& p) { return alg.leq(p, x); })) {
      out.push_back(x);
    }
  }
  return out;
}

// ---- name tables ------------------------------------------------------------------

/// Ordered id → name table. Ids keep their declaration order.
template <class W>
class NameTable {
public:
  void add(std::string id, Name<W> n) {
    if (index_.contains(id)) throw input_error("duplicate name id '" + id + "'");
    index_.emplace(id, order_.size());
    order_.emplace_back(std::move(id), std::move(n));
  }

  bool contains(const std::string& id) const { return index_.contains(id); }
  const Name<W>& at(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw input_error("unknown name '" + id + "'");
    return order_[it->second].second;
  }
  const std::vector<std::pair<std::string, Name<W>>>& entries() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }

private:
  std::map<std::string, std::size_t> index_;
  std::vector<std::pair<std::string, Name<W>>> order_;
};

/// Raw declarations: each id lists (child id, weight) pairs.
template <class W>
struct NameDeclarations {
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, W>>>> names;
  std::vector<std::pair<std::string, HFSet>> check_of;
};

/**
 * Resolves declarations into names. Check names are generated first; the
 * remaining ids are built children-first. A reference cycle is rejected
 * with input_error naming an id on the cycle.
 */
template <class W>
NameTable<W> build_name_table(const NameDeclarations<W>& decls, const W& top) {
  std::map<std::string, const std::vector<std::pair<std::string, W>>*> raw;
  std::vector<std::string> order;
  for (const auto& [id, entries] : decls.names) {
    if (raw.contains(id)) throw input_error("duplicate name id '" + id + "'");
    raw.emplace(id, &entries);
    order.push_back(id);
  }
  std::map<std::string, Name<W>> built;
  CheckBuilder<W> checks(top);
  for (const auto& [id, x] : decls.check_of) {
    if (raw.contains(id) || built.contains(id)) throw input_error("duplicate name id '" + id + "'");
    built.emplace(id, checks(x));
  }

  enum class mark { none, active, done };
  std::map<std::string, mark> state;
  std::function<const Name<W>&(const std::string&)> resolve = [&](const std::string& id) -> const Name<W>& {
    if (auto it = built.find(id); it != built.end()) return it->second;
    auto r = raw.find(id);
    if (r == raw.end()) throw input_error("unknown name '" + id + "'");
    if (state[id] == mark::active) throw input_error("cyclic name reference through '" + id + "'");
    state[id] = mark::active;
    std::vector<typename Name<W>::entry> entries;
    for (const auto& [child, weight] : *r->second) entries.emplace_back(resolve(child), weight);
    state[id] = mark::done;
    return built.emplace(id, Name<W>(std::move(entries))).first->second;
  };

  NameTable<W> table;
  for (const auto& [id, x] : decls.check_of) table.add(id, built.at(id));
  for (const auto& id : order) table.add(id, resolve(id));
  return table;
}

} // namespace forcing

#endif
