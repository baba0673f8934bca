#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fomc/formula.hpp"

namespace fomc {

/// ||phi||: syntax-tree node count, subformula occurrences counted with
/// repetitions.
inline std::size_t subformula_count(const Formula& f) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < f.child_count(); ++i) n += subformula_count(f.child(i));
  return n;
}

namespace detail {

inline void term_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) term_vars(a, out);
}

inline void merge_vars(std::vector<std::string>& into, const std::vector<std::string>& more) {
  for (const auto& v : more) {
    if (std::find(into.begin(), into.end(), v) == into.end()) into.push_back(v);
  }
}

// Returns free variables of f; tracks the widest subformula seen.
inline std::vector<std::string> free_vars_rec(const Formula& f, std::size_t& width) {
  std::vector<std::string> out;
  if (f.is_atom()) {
    for (const auto& t : f.terms()) term_vars(t, out);
  } else if (f.kind() == FormulaKind::Not) {
    out = free_vars_rec(f.child(0), width);
  } else if (f.is_binary()) {
    out = free_vars_rec(f.child(0), width);
    merge_vars(out, free_vars_rec(f.child(1), width));
  } else {
    out = free_vars_rec(f.child(0), width);
    std::erase(out, f.variable());
  }
  width = std::max(width, out.size());
  return out;
}

inline void all_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    std::vector<std::string> vs;
    for (const auto& t : f.terms()) term_vars(t, vs);
    out.insert(vs.begin(), vs.end());
    return;
  }
  if (f.is_quantifier()) out.insert(f.variable());
  for (std::size_t i = 0; i < f.child_count(); ++i) all_vars(f.child(i), out);
}

}  // namespace detail

/// Free variables in first-appearance order.
inline std::vector<std::string> free_vars(const Formula& f) {
  std::size_t w = 0;
  return detail::free_vars_rec(f, w);
}

/// Variables of an atom or term list, first-appearance order.
inline std::vector<std::string> term_variables(const std::vector<Term>& terms) {
  std::vector<std::string> out;
  for (const auto& t : terms) detail::term_vars(t, out);
  return out;
}

/// w(phi): the maximal number of free variables of a subformula occurrence.
inline std::size_t width(const Formula& f) {
  std::size_t w = 0;
  detail::free_vars_rec(f, w);
  return w;
}

/// Number of distinct variables, free or bound (including binders).
inline std::size_t num_variables(const Formula& f) {
  std::set<std::string> vs;
  detail::all_vars(f, vs);
  return vs.size();
}

inline bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

inline bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    if (!is_quantifier_free(f.child(i))) return false;
  }
  return true;
}

/// Least t with phi in Sigma_t and least t with phi in Pi_t, reading the
/// hierarchy cumulatively and letting negation swap the two sides.
struct AlternationLevels {
  std::size_t sigma = 0;
  std::size_t pi = 0;
};

inline AlternationLevels alternation_levels(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Equal:
    case FormulaKind::Relation:
      return {0, 0};
    case FormulaKind::Not: {
      auto c = alternation_levels(f.child(0));
      return {c.pi, c.sigma};
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      auto a = alternation_levels(f.child(0));
      auto b = alternation_levels(f.child(1));
      return {std::max(a.sigma, b.sigma), std::max(a.pi, b.pi)};
    }
    case FormulaKind::Exists: {
      auto c = alternation_levels(f.child(0));
      std::size_t s = std::max<std::size_t>(c.sigma, 1);
      return {s, s + 1};
    }
    case FormulaKind::Forall: {
      auto c = alternation_levels(f.child(0));
      std::size_t p = std::max<std::size_t>(c.pi, 1);
      return {p + 1, p};
    }
  }
  return {};
}

struct Classification {
  std::size_t num_variables = 0;
  std::size_t width = 0;
  std::size_t subformula_count = 0;
  std::size_t encoding_length = 0;
  std::optional<std::size_t> sigma_level;
  std::optional<std::size_t> pi_level;
};

/// |phi|: character count of the canonical text form.
inline std::size_t encoding_length(const Formula& f) { return to_text(f).size(); }

/// Reports the Sigma side when it is no higher than the Pi side and vice
/// versa, so quantifier-free formulas get both levels 0, an existential
/// prefix yields only a Sigma level, a universal prefix only a Pi level.
inline Classification classify(const Formula& f) {
  Classification c;
  c.num_variables = num_variables(f);
  c.width = width(f);
  c.subformula_count = subformula_count(f);
  c.encoding_length = encoding_length(f);
  auto lv = alternation_levels(f);
  if (lv.sigma <= lv.pi) c.sigma_level = lv.sigma;
  if (lv.pi <= lv.sigma) c.pi_level = lv.pi;
  return c;
}

}  // namespace fomc
