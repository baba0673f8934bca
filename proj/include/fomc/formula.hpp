#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fomc {

/// A first-order term: a variable, a constant symbol, or a function symbol
/// applied to argument terms.
struct Term {
  enum class Kind { Variable, Constant, Apply };

  Kind kind = Kind::Variable;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string name) { return {Kind::Variable, std::move(name), {}}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name), {}}; }
  static Term apply(std::string name, std::vector<Term> args) {
    return {Kind::Apply, std::move(name), std::move(args)};
  }

  [[nodiscard]] bool is_variable() const { return kind == Kind::Variable; }
  [[nodiscard]] bool is_constant() const { return kind == Kind::Constant; }
  [[nodiscard]] bool is_apply() const { return kind == Kind::Apply; }

  friend bool operator==(const Term&, const Term&) = default;
};

enum class FormulaKind { Equal, Relation, Not, And, Or, Exists, Forall };

namespace detail {
struct FormulaNode;
}

/// Immutable first-order formula. Copies share structure.
class Formula {
 public:
  Formula() = default;

  static Formula eq(Term lhs, Term rhs);
  static Formula rel(std::string symbol, std::vector<Term> args);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  [[nodiscard]] bool valid() const { return node_ != nullptr; }
  [[nodiscard]] FormulaKind kind() const;

  [[nodiscard]] bool is_atom() const {
    return kind() == FormulaKind::Equal || kind() == FormulaKind::Relation;
  }
  [[nodiscard]] bool is_binary() const {
    return kind() == FormulaKind::And || kind() == FormulaKind::Or;
  }
  [[nodiscard]] bool is_quantifier() const {
    return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall;
  }
  /// Atom or negated atom.
  [[nodiscard]] bool is_literal() const {
    return is_atom() || (kind() == FormulaKind::Not && child(0).is_atom());
  }

  /// Relation symbol of a relational atom.
  [[nodiscard]] const std::string& symbol() const;
  /// Bound variable of a quantifier.
  [[nodiscard]] const std::string& variable() const;
  /// Arguments of an atom (two terms for equality).
  [[nodiscard]] const std::vector<Term>& terms() const;

  [[nodiscard]] std::size_t child_count() const;
  [[nodiscard]] const Formula& child(std::size_t i) const;

  /// Node identity; equal handles share the whole subtree.
  [[nodiscard]] const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {
struct FormulaNode {
  FormulaKind kind;
  std::string name;
  std::vector<Term> terms;
  Formula children[2];
  std::size_t arity = 0;
};
}  // namespace detail

inline Formula Formula::eq(Term lhs, Term rhs) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Equal;
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

inline Formula Formula::rel(std::string symbol, std::vector<Term> args) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Relation;
  n->name = std::move(symbol);
  n->terms = std::move(args);
  return Formula(std::move(n));
}

inline Formula Formula::neg(Formula f) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Not;
  n->children[0] = std::move(f);
  n->arity = 1;
  return Formula(std::move(n));
}

inline Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::And;
  n->children[0] = std::move(a);
  n->children[1] = std::move(b);
  n->arity = 2;
  return Formula(std::move(n));
}

inline Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Or;
  n->children[0] = std::move(a);
  n->children[1] = std::move(b);
  n->arity = 2;
  return Formula(std::move(n));
}

inline Formula Formula::exists(std::string var, Formula body) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Exists;
  n->name = std::move(var);
  n->children[0] = std::move(body);
  n->arity = 1;
  return Formula(std::move(n));
}

inline Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<detail::FormulaNode>();
  n->kind = FormulaKind::Forall;
  n->name = std::move(var);
  n->children[0] = std::move(body);
  n->arity = 1;
  return Formula(std::move(n));
}

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::symbol() const { return node_->name; }
inline const std::string& Formula::variable() const { return node_->name; }
inline const std::vector<Term>& Formula::terms() const { return node_->terms; }
inline std::size_t Formula::child_count() const { return node_->arity; }
inline const Formula& Formula::child(std::size_t i) const { return node_->children[i]; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.name != y.name || x.terms != y.terms) return false;
  for (std::size_t i = 0; i < x.arity; ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

inline void append_text(std::string& out, const Term& t) {
  out += t.name;
  if (t.is_apply()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ',';
      append_text(out, t.args[i]);
    }
    out += ')';
  }
}

/// Canonical text: fully parenthesized binaries, `EX v. `, `ALL v. `, `~`.
inline void append_text(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Equal:
      append_text(out, f.terms()[0]);
      out += '=';
      append_text(out, f.terms()[1]);
      return;
    case FormulaKind::Relation:
      out += f.symbol();
      out += '(';
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (i) out += ',';
        append_text(out, f.terms()[i]);
      }
      out += ')';
      return;
    case FormulaKind::Not:
      out += '~';
      append_text(out, f.child(0));
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      out += '(';
      append_text(out, f.child(0));
      out += f.kind() == FormulaKind::And ? " & " : " | ";
      append_text(out, f.child(1));
      out += ')';
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind() == FormulaKind::Exists ? "EX " : "ALL ";
      out += f.variable();
      out += ". ";
      append_text(out, f.child(0));
      return;
  }
}

inline std::string to_text(const Term& t) {
  std::string s;
  append_text(s, t);
  return s;
}

inline std::string to_text(const Formula& f) {
  std::string s;
  append_text(s, f);
  return s;
}

}  // namespace fomc
