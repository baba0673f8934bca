#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/metrics.hpp"
#include "fomc/rewrite.hpp"
#include "fomc/semantics.hpp"
#include "fomc/structure.hpp"
#include "fomc/vocabulary.hpp"

namespace fomc {

/// Names of the relation symbols of the relational vocabulary tau'.
struct ExtendedNames {
  std::string universe;                          // U
  std::map<std::string, std::string> constants;  // c -> U_c
  std::map<std::string, std::string> relations;  // R -> U_R
  std::map<std::string, std::string> functions;  // f -> F_f
  std::string extend;                            // R_e
};

struct ExtendedStructure {
  Structure structure = Structure(Vocabulary{}, 1);
  /// Element id -> tuple; ids below |A| are the original elements.
  std::vector<Tuple> elements;
  ExtendedNames names;
  /// Original relations carried over unchanged (for verbatim atoms).
  bool keeps_relations = false;
};

namespace detail {

inline ExtendedNames allocate_names(const Vocabulary& v, bool keep_relations) {
  Vocabulary taken;
  if (keep_relations) {
    for (const auto& r : v.relations()) taken.add_relation(r.name, r.arity);
  }
  auto claim = [&](const std::string& base) {
    std::string name = fresh_symbol(taken, base);
    taken.add_constant(name);
    return name;
  };
  ExtendedNames n;
  n.universe = claim("U");
  for (const auto& c : v.constants()) n.constants[c] = claim("U_" + c);
  for (const auto& r : v.relations()) n.relations[r.name] = claim("U_" + r.name);
  for (const auto& f : v.functions()) n.functions[f.name] = claim("F_" + f.name);
  n.extend = claim("R_e");
  return n;
}

}  // namespace detail

/// A' over A plus the extendable prefixes of relation tuples and the
/// argument tuples of functions; tuples of length 1 are the elements.
inline ExtendedStructure extend_structure(const Structure& a, bool keep_relations = false) {
  std::size_t n = a.universe_size();
  if (n < 2) throw PreconditionError("function elimination needs a universe of size >= 2");
  const Vocabulary& v = a.vocabulary();

  std::set<Tuple> long_tuples;
  for (std::size_t i = 0; i < v.relations().size(); ++i) {
    for (const auto& t : a.relation(i).tuples()) {
      for (std::size_t len = 2; len <= t.size(); ++len) long_tuples.emplace(t.begin(), t.begin() + len);
    }
  }
  for (const auto& f : v.functions()) {
    for (std::size_t len = 2; len <= f.arity; ++len) {
      for (TupleOdometer it(n, len); !it.done(); ++it) long_tuples.insert(*it);
    }
  }
  std::vector<Tuple> longs(long_tuples.begin(), long_tuples.end());
  std::stable_sort(longs.begin(), longs.end(),
                   [](const Tuple& x, const Tuple& y) { return x.size() < y.size(); });

  ExtendedStructure out{Structure(Vocabulary{}, 1), {}, detail::allocate_names(v, keep_relations),
                        keep_relations};
  for (std::size_t e = 0; e < n; ++e) out.elements.push_back({static_cast<Element>(e)});
  std::map<Tuple, Element> id;
  for (std::size_t e = 0; e < n; ++e) id[{static_cast<Element>(e)}] = static_cast<Element>(e);
  for (auto& t : longs) {
    id[t] = static_cast<Element>(out.elements.size());
    out.elements.push_back(t);
  }

  const ExtendedNames& names = out.names;
  Vocabulary tv;
  if (keep_relations) {
    for (const auto& r : v.relations()) tv.add_relation(r.name, r.arity);
  }
  tv.add_relation(names.universe, 1);
  for (const auto& c : v.constants()) tv.add_relation(names.constants.at(c), 1);
  for (const auto& r : v.relations()) tv.add_relation(names.relations.at(r.name), 1);
  for (const auto& f : v.functions()) tv.add_relation(names.functions.at(f.name), 2);
  tv.add_relation(names.extend, 3);

  Structure s(tv, out.elements.size());
  if (keep_relations) {
    for (std::size_t i = 0; i < v.relations().size(); ++i) {
      s.set_relation(v.relations()[i].name, a.relation(i).tuples());
    }
  }
  std::vector<Tuple> u;
  for (std::size_t e = 0; e < n; ++e) u.push_back({static_cast<Element>(e)});
  s.set_relation(names.universe, std::move(u));
  for (std::size_t i = 0; i < v.constants().size(); ++i) {
    s.set_relation(names.constants.at(v.constants()[i]), {{a.constant(i)}});
  }
  for (std::size_t i = 0; i < v.relations().size(); ++i) {
    std::vector<Tuple> ur;
    for (const auto& t : a.relation(i).tuples()) ur.push_back({id.at(t)});
    s.set_relation(names.relations.at(v.relations()[i].name), std::move(ur));
  }
  for (std::size_t i = 0; i < v.functions().size(); ++i) {
    const auto& f = v.functions()[i];
    std::vector<Tuple> graph;
    for (TupleOdometer it(n, f.arity); !it.done(); ++it) {
      graph.push_back({id.at(*it), a.function(i)(*it)});
    }
    s.set_relation(names.functions.at(f.name), std::move(graph));
  }
  std::vector<Tuple> ext;
  for (const auto& t : longs) {
    Tuple prefix(t.begin(), t.end() - 1);
    ext.push_back({id.at(prefix), t.back(), id.at(t)});
  }
  s.set_relation(names.extend, std::move(ext));
  out.structure = std::move(s);
  return out;
}

/// Builder of the value, tuple and trans formulas over tau'. The auxiliary
/// variables x, y, z are three names disjoint from the input's variables.
class FunctionEliminator {
 public:
  FunctionEliminator(ExtendedNames names, std::string x, std::string y, std::string z,
                     bool keep_variable_atoms)
      : names_(std::move(names)),
        x_(std::move(x)),
        y_(std::move(y)),
        z_(std::move(z)),
        keep_(keep_variable_atoms) {}

  /// value_m(x, xs): x is the value of m.
  [[nodiscard]] Formula value(const Term& m, bool universal) const {
    switch (m.kind) {
      case Term::Kind::Variable:
        return Formula::eq(Term::var(x_), Term::var(m.name));
      case Term::Kind::Constant:
        return Formula::rel(names_.constants.at(m.name), {Term::var(x_)});
      case Term::Kind::Apply: {
        Formula inner = Formula::exists(
            x_, Formula::conj(Formula::eq(Term::var(x_), Term::var(y_)),
                              tuple(m.args, m.args.size())));
        Formula graph = Formula::rel(names_.functions.at(m.name), {Term::var(y_), Term::var(x_)});
        if (!universal) return Formula::exists(y_, Formula::conj(std::move(inner), std::move(graph)));
        return Formula::forall(y_, Formula::disj(Formula::neg(std::move(inner)), std::move(graph)));
      }
    }
    return {};
  }

  /// tuple_{m_1..m_r}(x, xs): x is the tuple of values of m_1..m_r.
  [[nodiscard]] Formula tuple(const std::vector<Term>& ms, std::size_t r) const {
    if (r == 1) return value(ms[0], false);
    Formula ext = Formula::rel(names_.extend, {Term::var(y_), Term::var(z_), Term::var(x_)});
    Formula prefix = Formula::exists(
        x_, Formula::conj(Formula::eq(Term::var(x_), Term::var(y_)), tuple(ms, r - 1)));
    Formula last = Formula::exists(
        x_, Formula::conj(Formula::eq(Term::var(x_), Term::var(z_)), value(ms[r - 1], false)));
    return Formula::exists(
        y_, Formula::exists(z_, Formula::conj(Formula::conj(std::move(ext), std::move(prefix)),
                                              std::move(last))));
  }

  [[nodiscard]] Formula trans(const Formula& f, bool universal) const {
    switch (f.kind()) {
      case FormulaKind::Equal: {
        if (keep_ && all_variables(f)) return f;
        const Term& m1 = f.terms()[0];
        const Term& m2 = f.terms()[1];
        if (!universal) {
          return Formula::exists(x_, Formula::conj(value(m1, false), value(m2, false)));
        }
        return Formula::forall(x_,
                               Formula::disj(Formula::neg(value(m1, false)), value(m2, true)));
      }
      case FormulaKind::Relation: {
        if (keep_ && all_variables(f)) return f;
        Formula ur = Formula::rel(names_.relations.at(f.symbol()), {Term::var(x_)});
        Formula tup = tuple(f.terms(), f.terms().size());
        // For r >= 2 the tuple may be missing from A', which would make the
        // universal form vacuously true.
        if (!universal || f.terms().size() >= 2) {
          return Formula::exists(x_, Formula::conj(std::move(ur), std::move(tup)));
        }
        return Formula::forall(x_, Formula::disj(Formula::neg(std::move(tup)), std::move(ur)));
      }
      case FormulaKind::Not:
        return Formula::neg(trans(f.child(0), !universal));
      case FormulaKind::And:
        return Formula::conj(trans(f.child(0), universal), trans(f.child(1), universal));
      case FormulaKind::Or:
        return Formula::disj(trans(f.child(0), universal), trans(f.child(1), universal));
      case FormulaKind::Exists: {
        Formula u = Formula::rel(names_.universe, {Term::var(f.variable())});
        return Formula::exists(f.variable(), Formula::conj(std::move(u), trans(f.child(0), universal)));
      }
      case FormulaKind::Forall: {
        Formula u = Formula::rel(names_.universe, {Term::var(f.variable())});
        return Formula::forall(f.variable(),
                               Formula::disj(Formula::neg(std::move(u)), trans(f.child(0), universal)));
      }
    }
    return f;
  }

 private:
  static bool all_variables(const Formula& f) {
    return std::all_of(f.terms().begin(), f.terms().end(),
                       [](const Term& t) { return t.is_variable(); });
  }

  ExtendedNames names_;
  std::string x_, y_, z_;
  bool keep_;
};

struct EliminationOptions {
  /// Atoms whose arguments are all variables stay as they are, and their
  /// relations are carried into A'. Off gives the fully translated form.
  bool keep_variable_atoms = true;
};

struct EliminationResult {
  ExtendedStructure extended;
  Formula trans;
  /// Whether the existential translation was chosen (odd t).
  bool existential_form = true;
  std::vector<std::string> aux_vars;
  /// NNF of trans with its classification.
  Formula normalized;
  Classification normalized_class;
};

namespace detail {

inline void collect_all_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    for (const auto& v : term_variables(f.terms())) out.insert(v);
    return;
  }
  if (f.is_quantifier()) out.insert(f.variable());
  for (std::size_t i = 0; i < f.child_count(); ++i) collect_all_vars(f.child(i), out);
}

}  // namespace detail

/// Replaces function symbols by their graphs: A |= phi iff A' |= trans, and
/// trans uses at most three variables more than phi.
inline EliminationResult eliminate_functions(const Structure& a, const Formula& phi,
                                             const EliminationOptions& opts = {}) {
  if (!is_sentence(phi)) throw PreconditionError("function elimination needs a sentence");
  check_formula(phi, a.vocabulary());
  EliminationResult r;
  r.extended = extend_structure(a, opts.keep_variable_atoms);

  std::set<std::string> used;
  detail::collect_all_vars(phi, used);
  const Vocabulary& tv = r.extended.structure.vocabulary();
  for (std::string base : {"x", "y", "z"}) {
    while (used.count(base) || tv.contains(base)) base += '_';
    used.insert(base);
    r.aux_vars.push_back(base);
  }
  FunctionEliminator elim(r.extended.names, r.aux_vars[0], r.aux_vars[1], r.aux_vars[2],
                          opts.keep_variable_atoms);
  std::size_t t = alternation_levels(phi).sigma;
  r.existential_form = t % 2 == 1;
  r.trans = elim.trans(phi, !r.existential_form);
  r.normalized = nnf(r.trans);
  r.normalized_class = classify(r.normalized);
  return r;
}

}  // namespace fomc
