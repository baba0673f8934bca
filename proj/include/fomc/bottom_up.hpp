#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "fomc/assignment.hpp"
#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/meter.hpp"
#include "fomc/metrics.hpp"
#include "fomc/semantics.hpp"
#include "fomc/structure.hpp"

namespace fomc {

/// Satisfying assignments of a formula over its free variables, as a sorted
/// set of tuples whose columns follow `vars`.
struct AssignmentTable {
  std::vector<std::string> vars;
  std::vector<Tuple> rows;

  [[nodiscard]] bool contains(const Tuple& t) const {
    return std::binary_search(rows.begin(), rows.end(), t);
  }
};

struct BottomUpResult {
  EvalReport report;
  AssignmentTable table;
};

namespace detail {

class BottomUp {
 public:
  BottomUp(const Structure& a, SpaceMeter& meter, Counters& counters)
      : a_(a), n_(a.universe_size()), meter_(meter), counters_(counters) {}

  AssignmentTable run(const Formula& f) {
    SpaceMeter::Frame frame(meter_, 0);
    ++counters_.recursive_calls;
    AssignmentTable out;
    out.vars = free_vars(f);
    std::size_t k = out.vars.size();
    switch (f.kind()) {
      case FormulaKind::Equal:
      case FormulaKind::Relation:
        for (TupleOdometer it(n_, k); !it.done(); ++it) {
          ++counters_.assignments_enumerated;
          if (atom_holds(f, out.vars, *it)) out.rows.push_back(*it);
        }
        break;
      case FormulaKind::Not: {
        AssignmentTable c = run(f.child(0));
        for (TupleOdometer it(n_, k); !it.done(); ++it) {
          ++counters_.assignments_enumerated;
          if (!c.contains(*it)) out.rows.push_back(*it);
        }
        break;
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        AssignmentTable l = run(f.child(0));
        AssignmentTable r = run(f.child(1));
        hold(l);
        hold(r);
        auto lmap = columns(out.vars, l.vars);
        auto rmap = columns(out.vars, r.vars);
        bool conj = f.kind() == FormulaKind::And;
        Tuple lt, rt;
        for (TupleOdometer it(n_, k); !it.done(); ++it) {
          ++counters_.assignments_enumerated;
          project(*it, lmap, lt);
          project(*it, rmap, rt);
          bool a = l.contains(lt);
          bool b = r.contains(rt);
          if (conj ? (a && b) : (a || b)) out.rows.push_back(*it);
        }
        release(l);
        release(r);
        break;
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        AssignmentTable c = run(f.child(0));
        auto at = std::find(c.vars.begin(), c.vars.end(), f.variable());
        if (at == c.vars.end()) {
          counters_.assignments_enumerated += c.rows.size();
          out.rows = std::move(c.rows);
          break;
        }
        std::size_t col = static_cast<std::size_t>(at - c.vars.begin());
        hold(c);
        std::vector<Tuple> projected;
        projected.reserve(c.rows.size());
        for (const auto& row : c.rows) {
          ++counters_.assignments_enumerated;
          Tuple t = row;
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(col));
          projected.push_back(std::move(t));
        }
        release(c);
        std::sort(projected.begin(), projected.end());
        if (f.kind() == FormulaKind::Exists) {
          projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
          out.rows = std::move(projected);
        } else {
          // Division: keep tuples that occur once for every element.
          for (std::size_t i = 0; i < projected.size();) {
            std::size_t j = i;
            while (j < projected.size() && projected[j] == projected[i]) ++j;
            if (j - i == n_) out.rows.push_back(projected[i]);
            i = j;
          }
        }
        break;
      }
    }
    return out;
  }

 private:
  static std::vector<std::size_t> columns(const std::vector<std::string>& outer,
                                          const std::vector<std::string>& inner) {
    std::vector<std::size_t> map;
    for (const auto& v : inner) {
      map.push_back(static_cast<std::size_t>(std::find(outer.begin(), outer.end(), v) -
                                             outer.begin()));
    }
    return map;
  }

  static void project(const Tuple& t, const std::vector<std::size_t>& map, Tuple& out) {
    out.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) out[i] = t[map[i]];
  }

  Element term_value(const Term& t, const std::vector<std::string>& vars, const Tuple& row) {
    if (t.is_constant()) return a_.constant(t.name);
    return row[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), t.name) -
                                        vars.begin())];
  }

  bool atom_holds(const Formula& f, const std::vector<std::string>& vars, const Tuple& row) {
    if (f.kind() == FormulaKind::Equal) {
      return term_value(f.terms()[0], vars, row) == term_value(f.terms()[1], vars, row);
    }
    Tuple t;
    for (const auto& x : f.terms()) t.push_back(term_value(x, vars, row));
    return a_.relation(f.symbol()).contains(t);
  }

  // Tables are charged while they are alive at the combining node.
  void hold(const AssignmentTable& t) {
    meter_.push(t.rows.size() * t.vars.size() * ceil_log2(n_), 0);
  }
  void release(const AssignmentTable& t) {
    meter_.pop(t.rows.size() * t.vars.size() * ceil_log2(n_), 0);
  }

  const Structure& a_;
  std::size_t n_;
  SpaceMeter& meter_;
  Counters& counters_;
};

inline bool has_function_terms(const Formula& f) {
  if (f.is_atom()) {
    for (const auto& t : f.terms()) {
      if (t.is_apply()) return true;
    }
    return false;
  }
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    if (has_function_terms(f.child(i))) return true;
  }
  return false;
}

}  // namespace detail

/// Evaluates every subformula occurrence to its table of satisfying
/// assignments, children before parents. The returned table belongs to the
/// root; `answer` is whether `alpha` (restricted to the root's free
/// variables) is one of its rows.
inline BottomUpResult eval_bottom_up(const Formula& f, const Structure& a,
                                     const Assignment& alpha = {}) {
  auto start = std::chrono::steady_clock::now();
  if (detail::has_function_terms(f)) {
    throw UnsupportedFeatureError(
        "bottom-up evaluation needs a relational formula; apply eliminateFunctions first");
  }
  check_formula(f, a.vocabulary());
  auto fv = free_vars(f);
  Assignment restricted = alpha.restrict(fv);
  restricted.check_range(a.universe_size());

  SpaceMeter meter(CostModel::Brute);
  BottomUpResult r;
  r.report.engine = "bottomup";
  r.table = detail::BottomUp(a, meter, r.report.counters).run(f);
  r.report.answer = r.table.contains(restricted.values());
  r.report.peak_bits = meter.peak_bits();
  r.report.peak_depth = meter.peak_depth();
  r.report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace fomc
