#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/metrics.hpp"
#include "fomc/vocabulary.hpp"

namespace fomc {

/// Path of child indices from the root to a subformula occurrence.
using Position = std::vector<std::uint8_t>;

inline const Formula& subformula_at(const Formula& f, const Position& pos) {
  const Formula* cur = &f;
  for (auto i : pos) {
    if (i >= cur->child_count()) throw PreconditionError("position outside formula");
    cur = &cur->child(i);
  }
  return *cur;
}

namespace detail {

inline Formula rebuild(const Formula& f, Formula c0, Formula c1) {
  switch (f.kind()) {
    case FormulaKind::Not: return Formula::neg(std::move(c0));
    case FormulaKind::And: return Formula::conj(std::move(c0), std::move(c1));
    case FormulaKind::Or: return Formula::disj(std::move(c0), std::move(c1));
    case FormulaKind::Exists: return Formula::exists(f.variable(), std::move(c0));
    case FormulaKind::Forall: return Formula::forall(f.variable(), std::move(c0));
    default: return f;
  }
}

inline Formula replace_rec(const Formula& f, const Position& pos, std::size_t depth,
                           const Formula& replacement) {
  if (depth == pos.size()) return replacement;
  std::size_t i = pos[depth];
  if (i >= f.child_count()) throw PreconditionError("position outside formula");
  Formula c0 = f.child(0);
  Formula c1 = f.child_count() > 1 ? f.child(1) : Formula();
  (i == 0 ? c0 : c1) = replace_rec(f.child(i), pos, depth + 1, replacement);
  return rebuild(f, std::move(c0), std::move(c1));
}

inline void positions_rec(const Formula& f, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    cur.push_back(static_cast<std::uint8_t>(i));
    positions_rec(f.child(i), cur, out);
    cur.pop_back();
  }
}

inline Formula nnf_rec(const Formula& f, bool negate) {
  switch (f.kind()) {
    case FormulaKind::Equal:
    case FormulaKind::Relation:
      return negate ? Formula::neg(f) : f;
    case FormulaKind::Not:
      return nnf_rec(f.child(0), !negate);
    case FormulaKind::And:
    case FormulaKind::Or: {
      Formula a = nnf_rec(f.child(0), negate);
      Formula b = nnf_rec(f.child(1), negate);
      bool conj = (f.kind() == FormulaKind::And) != negate;
      return conj ? Formula::conj(std::move(a), std::move(b))
                  : Formula::disj(std::move(a), std::move(b));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      Formula body = nnf_rec(f.child(0), negate);
      bool ex = (f.kind() == FormulaKind::Exists) != negate;
      return ex ? Formula::exists(f.variable(), std::move(body))
                : Formula::forall(f.variable(), std::move(body));
    }
  }
  return f;
}

inline Term subst_term(const Term& t, const std::string& var, const std::string& c) {
  if (t.is_variable()) return t.name == var ? Term::constant(c) : t;
  if (t.is_constant()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args) args.push_back(subst_term(a, var, c));
  return Term::apply(t.name, std::move(args));
}

inline Formula subst_rec(const Formula& f, const std::string& var, const std::string& c) {
  if (f.is_atom()) {
    std::vector<Term> ts;
    for (const auto& t : f.terms()) ts.push_back(subst_term(t, var, c));
    return f.kind() == FormulaKind::Equal ? Formula::eq(ts[0], ts[1])
                                          : Formula::rel(f.symbol(), std::move(ts));
  }
  if (f.is_quantifier() && f.variable() == var) return f;
  Formula c0 = subst_rec(f.child(0), var, c);
  Formula c1 = f.child_count() > 1 ? subst_rec(f.child(1), var, c) : Formula();
  return rebuild(f, std::move(c0), std::move(c1));
}

}  // namespace detail

/// Copy of `f` with the subformula at `pos` replaced.
inline Formula replace_at(const Formula& f, const Position& pos, const Formula& replacement) {
  return detail::replace_rec(f, pos, 0, replacement);
}

/// All subformula positions in preorder.
inline std::vector<Position> positions(const Formula& f) {
  std::vector<Position> out;
  Position cur;
  detail::positions_rec(f, cur, out);
  return out;
}

/// Negation normal form: negations only in front of atoms.
inline Formula nnf(const Formula& f) { return detail::nnf_rec(f, false); }

inline bool is_nnf(const Formula& f) {
  if (f.kind() == FormulaKind::Not) return f.child(0).is_atom();
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    if (!is_nnf(f.child(i))) return false;
  }
  return true;
}

/// Existential-positive over quantifier-free literals: NNF without ALL.
inline bool is_sigma1_nnf(const Formula& f) {
  if (f.kind() == FormulaKind::Forall) return false;
  if (f.kind() == FormulaKind::Not) return f.child(0).is_atom();
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    if (!is_sigma1_nnf(f.child(i))) return false;
  }
  return true;
}

/// Replaces every free occurrence of `var` by the constant `c`.
inline Formula substitute_const(const Formula& f, const std::string& var,
                                const std::string& c, const Vocabulary& vocab) {
  auto ref = vocab.find(c);
  if (!ref || ref->kind != SymbolKind::Constant) {
    throw VocabularyError("unknown constant '" + c + "'");
  }
  return detail::subst_rec(f, var, c);
}

}  // namespace fomc
