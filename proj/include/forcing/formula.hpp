#ifndef FORCING_FORMULA_HPP
#define FORCING_FORMULA_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hfset.hpp"

namespace forcing {

/// A term: an identifier (bound variable or constant, resolved at evaluation
/// time) or an HF literal. `position` is the source offset, not part of equality.
struct Term {
  enum class kind { ident, literal };

  kind k = kind::ident;
  std::string ident;
  HFSet literal;
  std::size_t position = 0;

  static Term var(std::string name, std::size_t pos = 0) { return {kind::ident, std::move(name), {}, pos}; }
  static Term lit(HFSet x, std::size_t pos = 0) { return {kind::literal, {}, std::move(x), pos}; }

  bool is_ident() const noexcept { return k == kind::ident; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.k != b.k) return false;
    return a.is_ident() ? a.ident == b.ident : a.literal == b.literal;
  }
};

enum class Op { member, equal, negation, conjunction, disjunction, implication, biconditional, forall, exists };

/// First-order formula over ∈ and =. Immutable; subformulas are shared.
class Formula {
  struct node;

public:
  static Formula member(Term a, Term b) { return make(Op::member, std::move(a), std::move(b)); }
  static Formula equal(Term a, Term b) { return make(Op::equal, std::move(a), std::move(b)); }
  static Formula negation(Formula f) { return make(Op::negation, {}, {}, {}, std::move(f)); }
  static Formula conjunction(Formula f, Formula g) { return make(Op::conjunction, {}, {}, {}, std::move(f), std::move(g)); }
  static Formula disjunction(Formula f, Formula g) { return make(Op::disjunction, {}, {}, {}, std::move(f), std::move(g)); }
  static Formula implication(Formula f, Formula g) { return make(Op::implication, {}, {}, {}, std::move(f), std::move(g)); }
  static Formula biconditional(Formula f, Formula g) { return make(Op::biconditional, {}, {}, {}, std::move(f), std::move(g)); }
  static Formula forall(std::string var, Formula body) { return make(Op::forall, {}, {}, std::move(var), std::move(body)); }
  static Formula exists(std::string var, Formula body) { return make(Op::exists, {}, {}, std::move(var), std::move(body)); }

  Op op() const noexcept { return node_->op; }
  bool is_atomic() const noexcept { return op() == Op::member || op() == Op::equal; }
  bool is_quantifier() const noexcept { return op() == Op::forall || op() == Op::exists; }
  bool is_binary() const noexcept {
    return op() == Op::conjunction || op() == Op::disjunction || op() == Op::implication ||
           op() == Op::biconditional;
  }

  const Term& lhs() const noexcept { return node_->lhs; }
  const Term& rhs() const noexcept { return node_->rhs; }
  const std::string& variable() const noexcept { return node_->var; }
  /// Operand of ¬, body of a quantifier, or left operand of a connective.
  const Formula& first() const noexcept { return *node_->first; }
  const Formula& second() const noexcept { return *node_->second; }
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    if (a.is_atomic()) return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    if (a.op() == Op::negation) return a.first() == b.first();
    if (a.is_quantifier()) return a.variable() == b.variable() && a.first() == b.first();
    return a.first() == b.first() && a.second() == b.second();
  }

private:
  struct node {
    Op op;
    Term lhs, rhs;
    std::string var;
    std::unique_ptr<const Formula> first, second;
  };

  static Formula make(Op op, Term a, Term b, std::string var = {},
                      std::optional<Formula> f = std::nullopt, std::optional<Formula> g = std::nullopt) {
    auto n = std::make_shared<node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    n->var = std::move(var);
    if (f) n->first = std::make_unique<const Formula>(std::move(*f));
    if (g) n->second = std::make_unique<const Formula>(std::move(*g));
    return Formula(std::move(n));
  }

  explicit Formula(std::shared_ptr<const node> n) : node_(std::move(n)) {}

  std::shared_ptr<const node> node_;
};

// ---- syntax queries -------------------------------------------------------------

namespace detail {

inline void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto visit_term = [&](const Term& t) {
    if (!t.is_ident()) return;
    for (const auto& b : bound) {
      if (b == t.ident) return;
    }
    out.insert(t.ident);
  };
  if (f.is_atomic()) {
    visit_term(f.lhs());
    visit_term(f.rhs());
  } else if (f.is_quantifier()) {
    bound.push_back(f.variable());
    collect_free(f.first(), bound, out);
    bound.pop_back();
  } else {
    collect_free(f.first(), bound, out);
    if (f.is_binary()) collect_free(f.second(), bound, out);
  }
}

inline void collect_all(const Formula& f, std::set<std::string>& out) {
  if (f.is_atomic()) {
    if (f.lhs().is_ident()) out.insert(f.lhs().ident);
    if (f.rhs().is_ident()) out.insert(f.rhs().ident);
    return;
  }
  if (f.is_quantifier()) out.insert(f.variable());
  collect_all(f.first(), out);
  if (f.is_binary()) collect_all(f.second(), out);
}

inline void collect_literals(const Formula& f, std::vector<Term>& out) {
  if (f.is_atomic()) {
    if (!f.lhs().is_ident()) out.push_back(f.lhs());
    if (!f.rhs().is_ident()) out.push_back(f.rhs());
    return;
  }
  collect_literals(f.first(), out);
  if (f.is_binary()) collect_literals(f.second(), out);
}

} // namespace detail

/// Identifiers that occur outside the scope of a quantifier binding them.
inline std::set<std::string> free_identifiers(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  detail::collect_free(f, bound, out);
  return out;
}

/// Every identifier occurring anywhere, bound or free.
inline std::set<std::string> all_identifiers(const Formula& f) {
  std::set<std::string> out;
  detail::collect_all(f, out);
  return out;
}

inline std::vector<Term> literal_terms(const Formula& f) {
  std::vector<Term> out;
  detail::collect_literals(f, out);
  return out;
}

inline std::size_t depth(const Formula& f) {
  if (f.is_atomic()) return 0;
  std::size_t d = depth(f.first());
  if (f.is_binary()) d = std::max(d, depth(f.second()));
  return d + 1;
}

// ---- printer ---------------------------------------------------------------------
//
// Precedence, loosest first: quantifier < <-> < -> < or < and < not/atom.
// <-> is left-associative, -> right-associative, and/or left-associative.
// An operand of a binary connective is parenthesized unless it is atomic, a
// negation, or the same connective on its associative side. Quantifier
// bodies are parenthesized unless they are themselves quantifiers.

namespace detail {

inline void print_term(std::string& out, const Term& t) {
  if (t.is_ident()) out += t.ident;
  else out += to_literal(t.literal);
}

inline void print_formula(std::string& out, const Formula& f);

inline void print_operand(std::string& out, const Formula& operand, bool bare) {
  if (bare) {
    print_formula(out, operand);
    return;
  }
  out += '(';
  print_formula(out, operand);
  out += ')';
}

inline bool is_simple(const Formula& f) { return f.is_atomic() || f.op() == Op::negation; }

inline void print_formula(std::string& out, const Formula& f) {
  switch (f.op()) {
    case Op::member:
    case Op::equal:
      print_term(out, f.lhs());
      out += f.op() == Op::member ? " in " : " = ";
      print_term(out, f.rhs());
      return;
    case Op::negation:
      out += "not ";
      print_operand(out, f.first(), is_simple(f.first()));
      return;
    case Op::forall:
    case Op::exists:
      out += f.op() == Op::forall ? "forall " : "exists ";
      out += f.variable();
      out += ' ';
      print_operand(out, f.first(), f.first().is_quantifier());
      return;
    default: break;
  }
  const char* symbol = f.op() == Op::conjunction   ? " and "
                       : f.op() == Op::disjunction ? " or "
                       : f.op() == Op::implication ? " -> "
                                                   : " <-> ";
  const bool right_assoc = f.op() == Op::implication;
  print_operand(out, f.first(), is_simple(f.first()) || (!right_assoc && f.first().op() == f.op()));
  out += symbol;
  print_operand(out, f.second(), is_simple(f.second()) || (right_assoc && f.second().op() == f.op()));
}

} // namespace detail

inline std::string print(const Formula& f) {
  std::string out;
  detail::print_formula(out, f);
  return out;
}

// ---- parser ----------------------------------------------------------------------
//
//   formula := quant | iff
//   quant   := ("forall" | "exists") IDENT formula
//   iff     := imp ("<->" imp)*
//   imp     := or ("->" imp)?
//   or      := and ("or" and)*
//   and     := unary ("and" unary)*
//   unary   := "not" unary | "(" formula ")" | atom
//   atom    := term ("in" | "=") term
//   term    := IDENT | HF-literal

namespace detail {

inline bool is_keyword(std::string_view w) {
  return w == "forall" || w == "exists" || w == "not" || w == "and" || w == "or" || w == "in";
}

class FormulaParser {
public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = formula();
    skip();
    if (pos_ != text_.size()) throw parse_error("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return f;
  }

private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  /// The word at the cursor (without consuming), or empty.
  std::string_view peek_word() {
    skip();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) return {};
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  bool accept_word(std::string_view w) {
    if (peek_word() != w) return false;
    pos_ += w.size();
    return true;
  }

  bool accept_symbol(std::string_view s) {
    skip();
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }

  std::string identifier(const char* what) {
    auto w = peek_word();
    if (w.empty()) throw parse_error(std::string("expected ") + what, pos_);
    if (is_keyword(w)) throw parse_error("keyword '" + std::string(w) + "' used as " + what, pos_);
    pos_ += w.size();
    return std::string(w);
  }

  Formula formula() {
    auto w = peek_word();
    if (w == "forall" || w == "exists") {
      pos_ += w.size();
      std::string var = identifier("variable after quantifier");
      Formula body = formula();
      return w == "forall" ? Formula::forall(std::move(var), std::move(body))
                           : Formula::exists(std::move(var), std::move(body));
    }
    return iff();
  }

  Formula iff() {
    Formula f = imp();
    while (accept_symbol("<->")) f = Formula::biconditional(std::move(f), imp());
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (accept_symbol("->")) return Formula::implication(std::move(f), imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept_word("or")) f = Formula::disjunction(std::move(f), conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept_word("and")) f = Formula::conjunction(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept_word("not")) return Formula::negation(unary());
    skip();
    if (accept_symbol("(")) {
      Formula f = formula();
      if (!accept_symbol(")")) throw parse_error("expected ')'", pos_);
      return f;
    }
    auto w = peek_word();
    if (w == "forall" || w == "exists") {
      throw parse_error("quantifier must be parenthesized here", pos_);
    }
    return atom();
  }

  Formula atom() {
    Term a = term();
    if (accept_word("in")) return Formula::member(std::move(a), term());
    // "=" but not the start of "->" or "<->"
    if (accept_symbol("=")) return Formula::equal(std::move(a), term());
    throw parse_error("expected 'in' or '='", pos_);
  }

  Term term() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '[') {
      HFSet x = parse_literal_at(text_, pos_);
      return Term::lit(std::move(x), start);
    }
    if (pos_ >= text_.size()) throw parse_error("unexpected end of input, expected a term", pos_);
    return Term::var(identifier("term"), start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline Formula parse(std::string_view text) { return detail::FormulaParser(text).parse_all(); }

} // namespace forcing

#endif
