#ifndef FORCING_BOOLALG_HPP
#define FORCING_BOOLALG_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace forcing {

class FinBoolAlg;

/**
 * An element of a finite boolean algebra, stored as the set of atoms below
 * it (bit i set means atom i is below the element).
 *
 * Every finite boolean algebra is atomic, so this representation is
 * lossless. Elements remember their algebra; combining elements of two
 * different algebras throws precondition_error.
 */
class BAElement {
public:
  using mask_type = std::uint64_t;

  BAElement() = default;

  mask_type bits() const noexcept { return bits_; }
  inline FinBoolAlg algebra() const;
  bool is_zero() const noexcept { return bits_ == 0; }
  inline bool is_one() const;

  bool same_algebra(const BAElement& other) const noexcept { return alg_ == other.alg_; }

  friend bool operator==(const BAElement& a, const BAElement& b) {
    require_same(a, b);
    return a.bits_ == b.bits_;
  }

  /// Total order for containers (by atom mask); not the algebra order.
  friend bool operator<(const BAElement& a, const BAElement& b) {
    require_same(a, b);
    return a.bits_ < b.bits_;
  }

  static void require_same(const BAElement& a, const BAElement& b) {
    if (a.alg_ != b.alg_) throw precondition_error("elements belong to different algebras");
  }

private:
  friend class FinBoolAlg;
  struct data;
  BAElement(std::shared_ptr<const data> alg, mask_type bits) : alg_(std::move(alg)), bits_(bits) {}

  std::shared_ptr<const data> alg_;
  mask_type bits_ = 0;
};

struct BAElement::data {
  std::vector<std::string> labels;
  BAElement::mask_type full = 0;
};

/**
 * A finite boolean algebra, presented as the powerset of its atom list.
 * |algebra| = 2^|atoms|; 0 is the empty atom set and 1 the full one. The
 * zero-atom algebra is the degenerate one-element algebra with 0 = 1.
 */
class FinBoolAlg {
public:
  using mask_type = BAElement::mask_type;
  using value_type = BAElement;
  static constexpr std::size_t max_atoms = 63;

  explicit FinBoolAlg(std::vector<std::string> atom_labels) {
    if (atom_labels.size() > max_atoms) throw input_error("too many atoms");
    std::set<std::string> seen;
    for (const auto& label : atom_labels) {
      if (!seen.insert(label).second) throw input_error("duplicate atom label '" + label + "'");
    }
    auto d = std::make_shared<BAElement::data>();
    d->full = atom_labels.empty() ? 0 : (~mask_type{0} >> (64 - atom_labels.size()));
    d->labels = std::move(atom_labels);
    data_ = std::move(d);
  }

  std::size_t atom_count() const noexcept { return data_->labels.size(); }
  /// Number of elements, 2^atoms.
  std::size_t size() const noexcept { return std::size_t{1} << atom_count(); }
  bool is_degenerate() const noexcept { return atom_count() == 0; }
  const std::vector<std::string>& atom_labels() const noexcept { return data_->labels; }

  BAElement zero() const { return {data_, 0}; }
  BAElement one() const { return {data_, data_->full}; }
  BAElement atom(std::size_t i) const {
    if (i >= atom_count()) throw input_error("atom index out of range");
    return {data_, mask_type{1} << i};
  }
  BAElement element(mask_type bits) const {
    if ((bits & ~data_->full) != 0) throw input_error("atom mask outside the algebra");
    return {data_, bits};
  }

  /// Element whose atom set is exactly the given labels.
  BAElement element_of(const std::vector<std::string>& labels) const {
    mask_type bits = 0;
    for (const auto& label : labels) bits |= mask_type{1} << index_of(label);
    return {data_, bits};
  }

  std::size_t index_of(const std::string& label) const {
    const auto& ls = data_->labels;
    auto it = std::find(ls.begin(), ls.end(), label);
    if (it == ls.end()) throw input_error("unknown atom label '" + label + "'");
    return static_cast<std::size_t>(it - ls.begin());
  }

  std::vector<std::string> labels_of(const BAElement& x) const {
    check(x);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < atom_count(); ++i) {
      if (x.bits() & (mask_type{1} << i)) out.push_back(data_->labels[i]);
    }
    return out;
  }

  /// All 2^n elements in mask order. Only sensible for small algebras.
  std::vector<BAElement> elements() const {
    if (atom_count() > 20) throw input_error("algebra too large to enumerate");
    std::vector<BAElement> out;
    out.reserve(size());
    for (mask_type m = 0; m < size(); ++m) out.push_back({data_, m});
    return out;
  }

  std::vector<BAElement> atoms() const {
    std::vector<BAElement> out;
    for (std::size_t i = 0; i < atom_count(); ++i) out.push_back(atom(i));
    return out;
  }

  bool owns(const BAElement& x) const noexcept { return x.alg_ == data_; }
  void check(const BAElement& x) const {
    if (!owns(x)) throw precondition_error("element does not belong to this algebra");
  }

  BAElement meet(const BAElement& x, const BAElement& y) const {
    check(x), check(y);
    return {data_, x.bits() & y.bits()};
  }
  BAElement join(const BAElement& x, const BAElement& y) const {
    check(x), check(y);
    return {data_, x.bits() | y.bits()};
  }
  BAElement complement(const BAElement& x) const {
    check(x);
    return {data_, ~x.bits() & data_->full};
  }
  bool leq(const BAElement& x, const BAElement& y) const {
    check(x), check(y);
    return (x.bits() & ~y.bits()) == 0;
  }
  bool equal(const BAElement& x, const BAElement& y) const { return x == y; }

  friend bool operator==(const FinBoolAlg& a, const FinBoolAlg& b) noexcept {
    return a.data_ == b.data_;
  }

private:
  friend class BAElement;
  explicit FinBoolAlg(std::shared_ptr<const BAElement::data> d) : data_(std::move(d)) {}

  std::shared_ptr<const BAElement::data> data_;
};

inline FinBoolAlg BAElement::algebra() const {
  if (!alg_) throw precondition_error("element has no algebra");
  return FinBoolAlg(alg_);
}

inline bool BAElement::is_one() const { return alg_ && bits_ == alg_->full; }

inline FinBoolAlg powerset_algebra(std::vector<std::string> atom_labels) {
  return FinBoolAlg(std::move(atom_labels));
}

/// Algebra with atoms "a", "b", "c", ... (n ≤ 26).
inline FinBoolAlg letter_algebra(std::size_t n) {
  if (n > 26) throw input_error("letter_algebra: at most 26 atoms");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return FinBoolAlg(std::move(labels));
}

// ---- element operations ----------------------------------------------------

inline BAElement meet(const BAElement& x, const BAElement& y) { return x.algebra().meet(x, y); }
inline BAElement join(const BAElement& x, const BAElement& y) { return x.algebra().join(x, y); }
inline BAElement complement(const BAElement& x) { return x.algebra().complement(x); }
inline bool leq(const BAElement& x, const BAElement& y) { return x.algebra().leq(x, y); }

/// x + y = (x ∧ ¬y) ∨ (y ∧ ¬x)
inline BAElement ring_add(const BAElement& x, const BAElement& y) {
  return join(meet(x, complement(y)), meet(y, complement(x)));
}
/// x · y = x ∧ y
inline BAElement ring_mul(const BAElement& x, const BAElement& y) { return meet(x, y); }

inline bool is_atom(const BAElement& x) { return std::popcount(x.bits()) == 1; }

inline std::vector<BAElement> atoms_below(const BAElement& x) {
  const FinBoolAlg alg = x.algebra();
  std::vector<BAElement> out;
  for (std::size_t i = 0; i < alg.atom_count(); ++i) {
    if (x.bits() & (BAElement::mask_type{1} << i)) out.push_back(alg.atom(i));
  }
  return out;
}

/// Least upper bound; sup of the empty collection is 0.
inline BAElement sup(const FinBoolAlg& alg, std::span<const BAElement> xs) {
  BAElement acc = alg.zero();
  for (const auto& x : xs) acc = alg.join(acc, x);
  return acc;
}

/// Greatest lower bound; inf of the empty collection is 1.
inline BAElement inf(const FinBoolAlg& alg, std::span<const BAElement> xs) {
  BAElement acc = alg.one();
  for (const auto& x : xs) acc = alg.meet(acc, x);
  return acc;
}

/// Compact text form: 0, 1, or {a,c}.
inline std::string describe(const BAElement& x) {
  const FinBoolAlg alg = x.algebra();
  if (x.is_zero()) return "0";
  if (x.is_one()) return "1";
  std::string out = "{";
  bool first = true;
  for (const auto& label : alg.labels_of(x)) {
    if (!first) out += ",";
    first = false;
    out += label;
  }
  return out + "}";
}

// ---- subsets: ideal / filter candidates -------------------------------------

/// An explicit collection of elements of one algebra, kept sorted and unique.
class SubsetPredicate {
public:
  explicit SubsetPredicate(FinBoolAlg alg) : alg_(std::move(alg)) {}
  SubsetPredicate(FinBoolAlg alg, std::vector<BAElement> members) : alg_(std::move(alg)) {
    for (const auto& x : members) alg_.check(x);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
  }

  const FinBoolAlg& algebra() const noexcept { return alg_; }
  const std::vector<BAElement>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains(const BAElement& x) const {
    alg_.check(x);
    return std::binary_search(members_.begin(), members_.end(), x);
  }

  friend bool operator==(const SubsetPredicate& a, const SubsetPredicate& b) {
    return a.alg_ == b.alg_ && a.members_ == b.members_;
  }

private:
  FinBoolAlg alg_;
  std::vector<BAElement> members_;
};

namespace detail {

template <class F>
void for_each_submask(BAElement::mask_type m, F&& f) {
  for (BAElement::mask_type s = m;; s = (s - 1) & m) {
    f(s);
    if (s == 0) break;
  }
}

inline bool proper_nonempty(const SubsetPredicate& s) {
  return !s.empty() && s.size() < s.algebra().size();
}

} // namespace detail

/// Nonempty, proper, closed downward and under ∨.
inline bool is_ideal(const SubsetPredicate& s) {
  if (!detail::proper_nonempty(s)) return false;
  const auto& alg = s.algebra();
  for (const auto& x : s.members()) {
    bool closed = true;
    detail::for_each_submask(x.bits(), [&](BAElement::mask_type z) {
      if (closed && !s.contains(alg.element(z))) closed = false;
    });
    if (!closed) return false;
    for (const auto& y : s.members()) {
      if (!s.contains(alg.join(x, y))) return false;
    }
  }
  return true;
}

/// Nonempty, proper, closed upward and under ∧.
inline bool is_filter(const SubsetPredicate& s) {
  if (!detail::proper_nonempty(s)) return false;
  const auto& alg = s.algebra();
  const auto full = alg.one().bits();
  for (const auto& x : s.members()) {
    bool closed = true;
    // supersets of x are x | (any submask of the complement)
    detail::for_each_submask(full & ~x.bits(), [&](BAElement::mask_type extra) {
      if (closed && !s.contains(alg.element(x.bits() | extra))) closed = false;
    });
    if (!closed) return false;
    for (const auto& y : s.members()) {
      if (!s.contains(alg.meet(x, y))) return false;
    }
  }
  return true;
}

namespace detail {

inline bool decides_every_element(const SubsetPredicate& s) {
  for (const auto& x : s.algebra().elements()) {
    if (!s.contains(x) && !s.contains(s.algebra().complement(x))) return false;
  }
  return true;
}

} // namespace detail

inline bool is_prime_ideal(const SubsetPredicate& s) {
  return is_ideal(s) && detail::decides_every_element(s);
}

inline bool is_ultrafilter(const SubsetPredicate& s) {
  return is_filter(s) && detail::decides_every_element(s);
}

/// {¬x : x ∈ S}, which equals {x : ¬x ∈ S}.
inline SubsetPredicate dual(const SubsetPredicate& s) {
  std::vector<BAElement> out;
  out.reserve(s.size());
  for (const auto& x : s.members()) out.push_back(s.algebra().complement(x));
  return SubsetPredicate(s.algebra(), std::move(out));
}

/// Principal filter ↑x.
inline SubsetPredicate upward_closure(const FinBoolAlg& alg, const BAElement& x) {
  alg.check(x);
  std::vector<BAElement> out;
  detail::for_each_submask(alg.one().bits() & ~x.bits(), [&](BAElement::mask_type extra) {
    out.push_back(alg.element(x.bits() | extra));
  });
  return SubsetPredicate(alg, std::move(out));
}

/// Principal ideal ↓x.
inline SubsetPredicate downward_closure(const FinBoolAlg& alg, const BAElement& x) {
  alg.check(x);
  std::vector<BAElement> out;
  detail::for_each_submask(x.bits(), [&](BAElement::mask_type z) { out.push_back(alg.element(z)); });
  return SubsetPredicate(alg, std::move(out));
}

/// The ultrafilters of a finite algebra: one principal filter per atom.
inline std::vector<SubsetPredicate> ultrafilters(const FinBoolAlg& alg) {
  std::vector<SubsetPredicate> out;
  for (const auto& a : alg.atoms()) out.push_back(upward_closure(alg, a));
  return out;
}

// ---- maps between algebras -------------------------------------------------

/// A total map between two finite algebras, tabulated by source atom mask.
class ElementMap {
public:
  ElementMap(FinBoolAlg source, FinBoolAlg target, std::vector<BAElement> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.size()) throw precondition_error("map is not total on its source");
    for (const auto& y : images_) target_.check(y);
  }

  /// From an explicit association; throws if some source element is missing.
  static ElementMap from_pairs(const FinBoolAlg& source, const FinBoolAlg& target,
                               const std::map<BAElement, BAElement>& pairs) {
    std::vector<BAElement> images;
    images.reserve(source.size());
    for (const auto& x : source.elements()) {
      auto it = pairs.find(x);
      if (it == pairs.end()) {
        throw precondition_error("map is not total: no image for " + describe(x), describe(x));
      }
      images.push_back(it->second);
    }
    return ElementMap(source, target, std::move(images));
  }

  static ElementMap identity(const FinBoolAlg& alg) { return ElementMap(alg, alg, alg.elements()); }

  const FinBoolAlg& source() const noexcept { return source_; }
  const FinBoolAlg& target() const noexcept { return target_; }

  BAElement operator()(const BAElement& x) const {
    source_.check(x);
    return images_[x.bits()];
  }

private:
  FinBoolAlg source_;
  FinBoolAlg target_;
  std::vector<BAElement> images_;
};

/// Checks preservation of ∧, ∨ and ¬ on every element (pair).
inline bool is_homomorphism(const ElementMap& f) {
  const auto& src = f.source();
  const auto& dst = f.target();
  const auto xs = src.elements();
  for (const auto& x : xs) {
    if (f(src.complement(x)) != dst.complement(f(x))) return false;
    for (const auto& y : xs) {
      if (f(src.meet(x, y)) != dst.meet(f(x), f(y))) return false;
      if (f(src.join(x, y)) != dst.join(f(x), f(y))) return false;
    }
  }
  return true;
}

/// Preimage of 0.
inline SubsetPredicate kernel(const ElementMap& f) {
  std::vector<BAElement> out;
  for (const auto& x : f.source().elements()) {
    if (f(x).is_zero()) out.push_back(x);
  }
  return SubsetPredicate(f.source(), std::move(out));
}

// ---- quotients -------------------------------------------------------------

/**
 * B/I computed from the equivalence x ~ y iff x∧¬y ∈ I and y∧¬x ∈ I.
 *
 * `classes` lists the equivalence classes ordered by their least member;
 * `algebra` is the quotient rebuilt over its own atoms (the minimal nonzero
 * classes, labelled by the atoms of their least representative);
 * `projection` sends each element of B to its class.
 */
struct Quotient {
  FinBoolAlg base;
  SubsetPredicate ideal;
  std::vector<std::vector<BAElement>> classes;
  std::vector<std::size_t> class_of; // indexed by atom mask of B
  FinBoolAlg algebra;
  ElementMap projection;
};

namespace detail {

inline bool equivalent_mod(const SubsetPredicate& ideal, const BAElement& x, const BAElement& y) {
  const auto& alg = ideal.algebra();
  return ideal.contains(alg.meet(x, alg.complement(y))) &&
         ideal.contains(alg.meet(y, alg.complement(x)));
}

inline std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : "+") + l;
  return out.empty() ? "0" : out;
}

} // namespace detail

inline Quotient quotient(const FinBoolAlg& base, const SubsetPredicate& ideal) {
  if (!(ideal.algebra() == base)) throw precondition_error("ideal belongs to another algebra");
  if (!is_ideal(ideal)) throw precondition_error("quotient: the given set is not an ideal");

  const auto xs = base.elements();
  std::vector<std::size_t> class_of(xs.size(), SIZE_MAX);
  std::vector<std::vector<BAElement>> classes;
  for (const auto& x : xs) {
    if (class_of[x.bits()] != SIZE_MAX) continue;
    const std::size_t id = classes.size();
    classes.emplace_back();
    for (const auto& y : xs) {
      if (class_of[y.bits()] == SIZE_MAX && detail::equivalent_mod(ideal, x, y)) {
        class_of[y.bits()] = id;
        classes.back().push_back(y);
      }
    }
  }

  // class order: [x] ≤ [y] iff x∧¬y ∈ I (independent of representatives)
  auto class_leq = [&](std::size_t a, std::size_t b) {
    const auto& x = classes[a].front();
    const auto& y = classes[b].front();
    return ideal.contains(base.meet(x, base.complement(y)));
  };
  const std::size_t zero_class = class_of[0];
  std::vector<std::size_t> atom_classes;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (c == zero_class) continue;
    bool minimal = true;
    for (std::size_t d = 0; d < classes.size() && minimal; ++d) {
      if (d != zero_class && d != c && class_leq(d, c)) minimal = false;
    }
    if (minimal) atom_classes.push_back(c);
  }
  if ((std::size_t{1} << atom_classes.size()) != classes.size()) {
    throw precondition_error("quotient: class count is not a power of two over its atoms");
  }

  std::vector<std::string> labels;
  for (auto c : atom_classes) labels.push_back(detail::join_labels(base.labels_of(classes[c].front())));
  FinBoolAlg q(labels);

  std::vector<BAElement> images;
  images.reserve(xs.size());
  for (const auto& x : xs) {
    BAElement::mask_type bits = 0;
    for (std::size_t i = 0; i < atom_classes.size(); ++i) {
      if (class_leq(atom_classes[i], class_of[x.bits()])) bits |= BAElement::mask_type{1} << i;
    }
    images.push_back(q.element(bits));
  }
  ElementMap projection(base, q, std::move(images));
  return Quotient{base, ideal, std::move(classes), std::move(class_of), q, std::move(projection)};
}

/**
 * The quotient computed natively on classes: values are the least member
 * of each class and operations act on representatives. Independent of the
 * rebuilt atom representation, so the law suite can check both.
 */
class QuotientStructure {
public:
  using value_type = BAElement;

  explicit QuotientStructure(const Quotient& q) : q_(q) {}

  std::vector<BAElement> elements() const {
    std::vector<BAElement> out;
    for (const auto& c : q_.classes) out.push_back(c.front());
    return out;
  }
  BAElement zero() const { return canon(q_.base.zero()); }
  BAElement one() const { return canon(q_.base.one()); }
  BAElement meet(const BAElement& x, const BAElement& y) const { return canon(q_.base.meet(x, y)); }
  BAElement join(const BAElement& x, const BAElement& y) const { return canon(q_.base.join(x, y)); }
  BAElement complement(const BAElement& x) const { return canon(q_.base.complement(x)); }
  bool leq(const BAElement& x, const BAElement& y) const {
    return q_.ideal.contains(q_.base.meet(x, q_.base.complement(y)));
  }
  bool equal(const BAElement& x, const BAElement& y) const {
    return q_.class_of[x.bits()] == q_.class_of[y.bits()];
  }

private:
  BAElement canon(const BAElement& x) const { return q_.classes[q_.class_of[x.bits()]].front(); }

  const Quotient& q_;
};

} // namespace forcing

#endif
