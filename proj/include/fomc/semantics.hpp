#pragma once

#include <string>
#include <vector>

#include "fomc/assignment.hpp"
#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/structure.hpp"
#include "fomc/vocabulary.hpp"

namespace fomc {

inline void check_term(const Term& t, const Vocabulary& v) {
  switch (t.kind) {
    case Term::Kind::Variable:
      return;
    case Term::Kind::Constant:
      static_cast<void>(v.constant_index(t.name));
      return;
    case Term::Kind::Apply: {
      std::size_t i = v.function_index(t.name);
      if (v.functions()[i].arity != t.args.size()) {
        throw VocabularyError("arity mismatch for function '" + t.name + "'");
      }
      for (const auto& a : t.args) check_term(a, v);
      return;
    }
  }
}

/// Throws VocabularyError unless every symbol of `f` is declared in `v` with
/// the arity it is used at.
inline void check_formula(const Formula& f, const Vocabulary& v) {
  if (f.kind() == FormulaKind::Relation) {
    std::size_t i = v.relation_index(f.symbol());
    if (v.relations()[i].arity != f.terms().size()) {
      throw VocabularyError("arity mismatch for relation '" + f.symbol() + "'");
    }
  }
  if (f.is_atom()) {
    for (const auto& t : f.terms()) check_term(t, v);
    return;
  }
  for (std::size_t i = 0; i < f.child_count(); ++i) check_formula(f.child(i), v);
}

inline Element eval_term(const Term& t, const Structure& a, const Assignment& alpha) {
  switch (t.kind) {
    case Term::Kind::Variable:
      return alpha.at(t.name);
    case Term::Kind::Constant:
      return a.constant(t.name);
    case Term::Kind::Apply: {
      std::vector<Element> args;
      args.reserve(t.args.size());
      for (const auto& x : t.args) args.push_back(eval_term(x, a, alpha));
      return a.function(t.name)(args);
    }
  }
  return 0;
}

/// Truth of an atomic formula; function terms are evaluated innermost first.
inline bool eval_atom(const Formula& atom, const Structure& a, const Assignment& alpha) {
  if (!atom.is_atom()) throw PreconditionError("eval_atom needs an atomic formula");
  if (atom.kind() == FormulaKind::Equal) {
    return eval_term(atom.terms()[0], a, alpha) == eval_term(atom.terms()[1], a, alpha);
  }
  const Relation& r = a.relation(atom.symbol());
  if (r.arity() != atom.terms().size()) {
    throw VocabularyError("arity mismatch for relation '" + atom.symbol() + "'");
  }
  Tuple t;
  t.reserve(atom.terms().size());
  for (const auto& x : atom.terms()) t.push_back(eval_term(x, a, alpha));
  return r.contains(t);
}

}  // namespace fomc
