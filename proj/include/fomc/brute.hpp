#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "fomc/assignment.hpp"
#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/meter.hpp"
#include "fomc/metrics.hpp"
#include "fomc/semantics.hpp"
#include "fomc/structure.hpp"

namespace fomc {

namespace detail {

// Formula compiled against one structure: symbols resolved to indices,
// variables to slots.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const Structure& a) : a_(a) {
    check_formula(f, a.vocabulary());
    root_ = compile(f);
  }

  [[nodiscard]] std::size_t slot_count() const { return slots_.size(); }

  // Slot for `var`, or -1 when the formula never mentions it.
  [[nodiscard]] int slot_of(const std::string& var) const {
    auto it = slots_.find(var);
    return it == slots_.end() ? -1 : static_cast<int>(it->second);
  }

  struct Run {
    SpaceMeter& meter;
    Counters& counters;
    std::size_t frame_depth;
  };

  bool eval(std::vector<Element>& values, Run& run) const { return eval(root_, values, run); }

 private:
  struct CTerm {
    Term::Kind kind;
    std::uint32_t index;
    std::vector<CTerm> args;
  };

  struct Node {
    FormulaKind kind;
    std::uint32_t index = 0;  // relation or bound slot
    std::vector<CTerm> terms;
    int child[2] = {-1, -1};
  };

  std::uint32_t slot(const std::string& v) {
    auto [it, fresh] = slots_.emplace(v, static_cast<std::uint32_t>(slots_.size()));
    return it->second;
  }

  CTerm compile(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Variable:
        return {t.kind, slot(t.name), {}};
      case Term::Kind::Constant:
        return {t.kind, a_.constant(t.name), {}};
      case Term::Kind::Apply: {
        CTerm c{t.kind, static_cast<std::uint32_t>(a_.vocabulary().function_index(t.name)), {}};
        for (const auto& x : t.args) c.args.push_back(compile(x));
        return c;
      }
    }
    return {};
  }

  int compile(const Formula& f) {
    Node n;
    n.kind = f.kind();
    if (f.kind() == FormulaKind::Relation) {
      n.index = static_cast<std::uint32_t>(a_.vocabulary().relation_index(f.symbol()));
    }
    if (f.is_atom()) {
      for (const auto& t : f.terms()) n.terms.push_back(compile(t));
    }
    if (f.is_quantifier()) n.index = slot(f.variable());
    for (std::size_t i = 0; i < f.child_count(); ++i) n.child[i] = compile(f.child(i));
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size() - 1);
  }

  Element value(const CTerm& t, const std::vector<Element>& values) const {
    switch (t.kind) {
      case Term::Kind::Variable: return values[t.index];
      case Term::Kind::Constant: return t.index;
      case Term::Kind::Apply: {
        Element buf[8];
        std::vector<Element> big;
        Element* args = buf;
        if (t.args.size() > 8) {
          big.resize(t.args.size());
          args = big.data();
        }
        for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = value(t.args[i], values);
        return a_.function(t.index)({args, t.args.size()});
      }
    }
    return 0;
  }

  bool eval(int id, std::vector<Element>& values, Run& run) const {
    const Node& n = nodes_[id];
    ++run.counters.recursive_calls;
    SpaceMeter::Frame frame(run.meter, ceil_log2(a_.universe_size()) + 1, run.frame_depth);
    switch (n.kind) {
      case FormulaKind::Equal:
        return value(n.terms[0], values) == value(n.terms[1], values);
      case FormulaKind::Relation: {
        Element buf[8];
        std::vector<Element> big;
        Element* t = buf;
        if (n.terms.size() > 8) {
          big.resize(n.terms.size());
          t = big.data();
        }
        for (std::size_t i = 0; i < n.terms.size(); ++i) t[i] = value(n.terms[i], values);
        return a_.relation(n.index).contains({t, n.terms.size()});
      }
      case FormulaKind::Not:
        return !eval(n.child[0], values, run);
      case FormulaKind::And:
        return eval(n.child[0], values, run) && eval(n.child[1], values, run);
      case FormulaKind::Or:
        return eval(n.child[0], values, run) || eval(n.child[1], values, run);
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        bool want = n.kind == FormulaKind::Exists;
        Element saved = values[n.index];
        bool result = !want;
        for (std::size_t e = 0; e < a_.universe_size(); ++e) {
          values[n.index] = static_cast<Element>(e);
          ++run.counters.assignments_enumerated;
          if (eval(n.child[0], values, run) == want) {
            result = want;
            break;
          }
        }
        values[n.index] = saved;
        return result;
      }
    }
    return false;
  }

  const Structure& a_;
  std::unordered_map<std::string, std::uint32_t> slots_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

// Shared by the divide-and-conquer engine, whose leaves charge bits into its
// own meter without adding to its depth.
inline bool brute_eval(const Formula& f, const Structure& a, const Assignment& alpha,
                       SpaceMeter& meter, Counters& counters, std::size_t frame_depth) {
  alpha.require(free_vars(f));
  alpha.check_range(a.universe_size());
  CompiledFormula cf(f, a);
  std::vector<Element> values(cf.slot_count(), 0);
  for (const auto& [v, e] : alpha.bindings()) {
    int s = cf.slot_of(v);
    if (s >= 0) values[s] = e;
  }
  CompiledFormula::Run run{meter, counters, frame_depth};
  return cf.eval(values, run);
}

}  // namespace detail

/// Recursive evaluation along the syntax. Every call is one stack frame of
/// ceil(log2 |A|) + 1 accounted bits: the loop value plus the answer bit.
inline EvalReport eval_brute(const Formula& f, const Structure& a, const Assignment& alpha = {}) {
  auto start = std::chrono::steady_clock::now();
  SpaceMeter meter(CostModel::Brute);
  EvalReport r;
  r.engine = "brute";
  r.answer = detail::brute_eval(f, a, alpha, meter, r.counters, 1);
  r.peak_bits = meter.peak_bits();
  r.peak_depth = meter.peak_depth();
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

}  // namespace fomc
