#ifndef FORCING_COHEN_HPP
#define FORCING_COHEN_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "order.hpp"

namespace forcing {

struct Cell {
  std::size_t row = 0;
  std::size_t column = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/**
 * A Cohen condition: a finite partial function from (row, column) to
 * {0,1}, kept sorted by cell. `rows` is the row bound of the poset the
 * condition belongs to. The empty condition is the top element.
 */
class Condition {
public:
  using entry = std::pair<Cell, std::uint8_t>;

  explicit Condition(std::size_t rows) : rows_(rows) {}

  Condition(std::size_t rows, std::vector<entry> entries) : rows_(rows) {
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& [cell, value] = entries[i];
      if (cell.row >= rows_) throw input_error("condition row " + std::to_string(cell.row) + " out of range");
      if (value > 1) throw input_error("condition values are bits");
      if (i > 0 && entries[i - 1].first == cell) {
        throw input_error("condition assigns cell (" + std::to_string(cell.row) + "," +
                          std::to_string(cell.column) + ") twice");
      }
    }
    entries_ = std::move(entries);
  }

  std::size_t rows() const noexcept { return rows_; }
  const std::vector<entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool is_top() const noexcept { return entries_.empty(); }

  std::optional<std::uint8_t> at(Cell cell) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), cell,
                               [](const entry& e, const Cell& c) { return e.first < c; });
    if (it == entries_.end() || it->first != cell) return std::nullopt;
    return it->second;
  }
  bool defines(Cell cell) const { return at(cell).has_value(); }

  /// This condition extended by one more assignment (cell must be free).
  Condition with(Cell cell, std::uint8_t value) const {
    if (defines(cell)) throw precondition_error("cell already assigned");
    auto es = entries_;
    es.push_back({cell, value});
    return Condition(rows_, std::move(es));
  }

  /// Every assignment of this condition also appears in `other`.
  bool is_subfunction_of(const Condition& other) const {
    return std::includes(other.entries_.begin(), other.entries_.end(), entries_.begin(), entries_.end());
  }

  std::string describe() const {
    if (entries_.empty()) return "{}";
    std::string out = "{";
    bool first = true;
    for (const auto& [cell, value] : entries_) {
      if (!first) out += ",";
      first = false;
      out += "(" + std::to_string(cell.row) + "," + std::to_string(cell.column) + ")=" + std::to_string(value);
    }
    return out + "}";
  }

  friend bool operator==(const Condition& a, const Condition& b) {
    return a.rows_ == b.rows_ && a.entries_ == b.entries_;
  }
  friend auto operator<=>(const Condition& a, const Condition& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    return a.entries_ <=> b.entries_;
  }

private:
  std::size_t rows_;
  std::vector<entry> entries_;
};

/// Finite partial functions rows × ω → {0,1}, p ≤ q iff q ⊆ p.
class CohenPoset {
public:
  using element_type = Condition;

  explicit CohenPoset(std::size_t rows) : rows_(rows) {
    if (rows_ == 0) throw input_error("the Cohen poset needs at least one row");
  }

  std::size_t rows() const noexcept { return rows_; }
  Condition top() const { return Condition(rows_); }
  Condition condition(std::vector<Condition::entry> entries) const { return Condition(rows_, std::move(entries)); }

  bool contains(const Condition& p) const noexcept { return p.rows() == rows_; }

  bool leq(const Condition& p, const Condition& q) const {
    check(p), check(q);
    return q.is_subfunction_of(p);
  }

  /// Compatible iff no cell gets different bits.
  bool compatible(const Condition& p, const Condition& q) const {
    check(p), check(q);
    auto i = p.entries().begin();
    auto j = q.entries().begin();
    while (i != p.entries().end() && j != q.entries().end()) {
      if (i->first < j->first) ++i;
      else if (j->first < i->first) ++j;
      else {
        if (i->second != j->second) return false;
        ++i, ++j;
      }
    }
    return true;
  }

  std::string describe(const Condition& p) const { return p.describe(); }

  void check(const Condition& p) const {
    if (!contains(p)) throw precondition_error("condition belongs to a Cohen poset with a different row count");
  }

private:
  std::size_t rows_;
};

/// p ∪ q for compatible conditions.
inline Condition merge(const CohenPoset& poset, const Condition& p, const Condition& q) {
  if (!poset.compatible(p, q)) throw precondition_error("merge of incompatible conditions");
  std::vector<Condition::entry> es;
  std::set_union(p.entries().begin(), p.entries().end(), q.entries().begin(), q.entries().end(),
                 std::back_inserter(es));
  return Condition(poset.rows(), std::move(es));
}

/**
 * Given x ≱ y, returns z ≤ y with z ⊥ x: y itself when x and y already
 * disagree somewhere, otherwise y plus the flip of the first value x
 * assigns and y leaves free.
 */
inline Condition separativity_witness(const CohenPoset& poset, const Condition& x, const Condition& y) {
  if (poset.leq(y, x)) throw precondition_error("separativity_witness: x >= y, no witness exists");
  if (!poset.compatible(x, y)) return y;
  for (const auto& [cell, value] : x.entries()) {
    if (!y.defines(cell)) return y.with(cell, static_cast<std::uint8_t>(1 - value));
  }
  throw precondition_error("separativity_witness: x >= y, no witness exists");
}

/// An ω-sequence of bits given as prefix followed by a repeating block.
struct GroundReal {
  std::vector<std::uint8_t> prefix;
  std::vector<std::uint8_t> period;

  GroundReal(std::vector<std::uint8_t> pre, std::vector<std::uint8_t> per)
      : prefix(std::move(pre)), period(std::move(per)) {
    if (period.empty()) throw input_error("ground real: repeating block must be nonempty");
    for (auto b : prefix) if (b > 1) throw input_error("ground real: bits must be 0 or 1");
    for (auto b : period) if (b > 1) throw input_error("ground real: bits must be 0 or 1");
  }

  std::uint8_t operator()(std::size_t n) const {
    if (n < prefix.size()) return prefix[n];
    return period[(n - prefix.size()) % period.size()];
  }

  std::string describe() const {
    std::string out;
    for (auto b : prefix) out += static_cast<char>('0' + b);
    out += "(";
    for (auto b : period) out += static_cast<char>('0' + b);
    return out + ")*";
  }
};

// ---- dense families ----------------------------------------------------------

/// D_{x,n}: cell (x,n) is assigned. Refinement assigns 0.
inline DenseOracle<Condition> d_total(const CohenPoset& poset, std::size_t row, std::size_t column) {
  if (row >= poset.rows()) throw input_error("d_total: row out of range");
  const Cell cell{row, column};
  auto member = [cell](const Condition& p) { return p.defines(cell); };
  auto refine = [cell](const Condition& p) -> std::optional<Condition> {
    if (p.defines(cell)) return p;
    return p.with(cell, 0);
  };
  return {"total(" + std::to_string(row) + "," + std::to_string(column) + ")", member, refine};
}

/// D_{x,y}: some column where rows x and y carry different bits. Refinement
/// takes the least column free in both rows and sets x to 1, y to 0.
inline DenseOracle<Condition> d_distinct(const CohenPoset& poset, std::size_t x, std::size_t y) {
  if (x == y) throw input_error("d_distinct: rows must differ");
  if (x >= poset.rows() || y >= poset.rows()) throw input_error("d_distinct: row out of range");
  auto member = [x, y](const Condition& p) {
    for (const auto& [cell, value] : p.entries()) {
      if (cell.row != x) continue;
      auto other = p.at({y, cell.column});
      if (other && *other != value) return true;
    }
    return false;
  };
  auto refine = [x, y, member](const Condition& p) -> std::optional<Condition> {
    if (member(p)) return p;
    for (std::size_t n = 0;; ++n) {
      if (!p.defines({x, n}) && !p.defines({y, n})) return p.with({x, n}, 1).with({y, n}, 0);
    }
  };
  return {"distinct(" + std::to_string(x) + "," + std::to_string(y) + ")", member, refine};
}

/// D_{F,x}: some column n where row x disagrees with F(n). Refinement takes
/// the least free column of row x and assigns 1 - F(n).
inline DenseOracle<Condition> d_avoid(const CohenPoset& poset, GroundReal f, std::size_t row) {
  if (row >= poset.rows()) throw input_error("d_avoid: row out of range");
  auto member = [f, row](const Condition& p) {
    for (const auto& [cell, value] : p.entries()) {
      if (cell.row == row && value != f(cell.column)) return true;
    }
    return false;
  };
  auto refine = [f, row, member](const Condition& p) -> std::optional<Condition> {
    if (member(p)) return p;
    for (std::size_t n = 0;; ++n) {
      if (!p.defines({row, n})) return p.with({row, n}, static_cast<std::uint8_t>(1 - f(n)));
    }
  };
  return {"avoid(" + f.describe() + "," + std::to_string(row) + ")", member, refine};
}

// ---- reading off the generic object --------------------------------------------

/// Union of the chain; chain members are pairwise compatible by construction.
inline Condition chain_union(const GenericFilter<CohenPoset>& g) {
  Condition acc = g.carrier().top();
  for (const auto& p : g.chain()) acc = merge(g.carrier(), acc, p);
  return acc;
}

/// G_x on [0, bound). Throws precondition_error at the first undecided cell.
inline std::vector<std::uint8_t> slice(const GenericFilter<CohenPoset>& g, std::size_t row, std::size_t bound) {
  if (row >= g.carrier().rows()) throw input_error("slice: row out of range");
  const Condition u = chain_union(g);
  std::vector<std::uint8_t> out;
  out.reserve(bound);
  for (std::size_t n = 0; n < bound; ++n) {
    auto v = u.at({row, n});
    if (!v) {
      const std::string cell = "(" + std::to_string(row) + "," + std::to_string(n) + ")";
      throw precondition_error("slice: cell " + cell + " was never decided by the chain", cell);
    }
    out.push_back(*v);
  }
  return out;
}

/// All distinct pairs incompatible.
inline bool is_pairwise_incompatible(const CohenPoset& poset, const std::vector<Condition>& conditions) {
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    for (std::size_t j = i + 1; j < conditions.size(); ++j) {
      if (conditions[i] == conditions[j]) continue;
      if (poset.compatible(conditions[i], conditions[j])) return false;
    }
  }
  return true;
}

// ---- the distinct-reals demonstration ------------------------------------------

struct AvoidSpec {
  std::size_t row;
  GroundReal real;
};

struct CohenDemoConfig {
  std::size_t kappa = 4;
  std::size_t columns = 8;
  bool total = true;
  bool distinct = true;
  std::vector<AvoidSpec> avoid;
};

struct AvoidVerdict {
  std::size_t row;
  std::string real;
  bool differs = false;                 // on some cell decided by the chain
  std::optional<std::size_t> witness;   // least such column
};

struct CohenDemoResult {
  GenericFilter<CohenPoset> filter;
  /// rows × columns; -1 marks a cell the chain left undecided.
  std::vector<std::vector<int>> matrix;
  bool rows_pairwise_distinct = false;
  std::vector<AvoidVerdict> avoid;
};

/**
 * Oracle schedule: distinct(x,y) for x < y, then the avoid oracles, then
 * total(x,n) row by row for n < columns. Separating and avoiding choices
 * are made while low columns are still free; totality only fills the rest.
 */
inline std::vector<DenseOracle<Condition>> demo_oracles(const CohenPoset& poset, const CohenDemoConfig& cfg) {
  std::vector<DenseOracle<Condition>> oracles;
  if (cfg.distinct) {
    for (std::size_t x = 0; x < cfg.kappa; ++x) {
      for (std::size_t y = x + 1; y < cfg.kappa; ++y) oracles.push_back(d_distinct(poset, x, y));
    }
  }
  for (const auto& a : cfg.avoid) oracles.push_back(d_avoid(poset, a.real, a.row));
  if (cfg.total) {
    for (std::size_t x = 0; x < cfg.kappa; ++x) {
      for (std::size_t n = 0; n < cfg.columns; ++n) oracles.push_back(d_total(poset, x, n));
    }
  }
  return oracles;
}

inline CohenDemoResult run_cohen_demo(const CohenDemoConfig& cfg) {
  CohenPoset poset(cfg.kappa);
  auto g = build_generic(poset, poset.top(), demo_oracles(poset, cfg));
  const Condition u = chain_union(g);

  std::vector<std::vector<int>> matrix(cfg.kappa, std::vector<int>(cfg.columns, -1));
  for (std::size_t x = 0; x < cfg.kappa; ++x) {
    for (std::size_t n = 0; n < cfg.columns; ++n) {
      if (auto v = u.at({x, n})) matrix[x][n] = *v;
    }
  }

  bool distinct = true;
  for (std::size_t x = 0; x < cfg.kappa; ++x) {
    for (std::size_t y = x + 1; y < cfg.kappa; ++y) {
      bool differ = false;
      for (std::size_t n = 0; n < cfg.columns; ++n) {
        if (matrix[x][n] >= 0 && matrix[y][n] >= 0 && matrix[x][n] != matrix[y][n]) differ = true;
      }
      if (!differ) distinct = false;
    }
  }

  std::vector<AvoidVerdict> verdicts;
  for (const auto& a : cfg.avoid) {
    AvoidVerdict v{a.row, a.real.describe(), false, std::nullopt};
    for (const auto& [cell, value] : u.entries()) {
      if (cell.row == a.row && value != a.real(cell.column)) {
        v.differs = true;
        if (!v.witness || cell.column < *v.witness) v.witness = cell.column;
      }
    }
    verdicts.push_back(v);
  }
  return CohenDemoResult{std::move(g), std::move(matrix), distinct, std::move(verdicts)};
}

} // namespace forcing

#endif
