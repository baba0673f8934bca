#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fomc/assignment.hpp"
#include "fomc/brute.hpp"
#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/meter.hpp"
#include "fomc/metrics.hpp"
#include "fomc/rewrite.hpp"
#include "fomc/semantics.hpp"
#include "fomc/structure.hpp"

namespace fomc {

/// Walks from the root into the child with the larger subformula count
/// (leftmost on ties) while the current count exceeds 2/3 of the root's.
/// The result has count at most 2N/3 and at least (N-1)/3.
inline Position split_subformula(const Formula& f) {
  std::size_t total = subformula_count(f);
  if (total < 3) throw PreconditionError("split needs a formula with at least 3 nodes");
  Position pos;
  const Formula* cur = &f;
  std::size_t count = total;
  while (3 * count > 2 * total) {
    std::size_t best = 0;
    std::size_t best_count = subformula_count(cur->child(0));
    if (cur->child_count() == 2) {
      std::size_t right = subformula_count(cur->child(1));
      if (right > best_count) {
        best = 1;
        best_count = right;
      }
    }
    pos.push_back(static_cast<std::uint8_t>(best));
    cur = &cur->child(best);
    count = best_count;
  }
  return pos;
}

enum class GuardKind { Bound, FreeInPhi };

struct GuardedRewrite {
  Formula phi0;
  Formula phi1;
  /// Where phi0 sits inside phi1 (guards shift positions).
  Position phi0_position;
  std::vector<std::string> y_vars;
  std::vector<GuardKind> guard_kinds;
  /// c_i for every y_i; a single designated constant when y is empty.
  std::vector<std::string> constants;
};

namespace detail {

inline Formula guard_path(const Formula& f, const Position& pos, std::size_t depth,
                          const std::vector<int>& guard_at,
                          const std::vector<std::string>& constants, Position& out) {
  if (depth == pos.size()) return f;
  std::size_t i = pos[depth];
  int g = guard_at[depth];
  out.push_back(static_cast<std::uint8_t>(i));
  if (g >= 0) out.push_back(1);
  Formula c0 = f.child(0);
  Formula c1 = f.child_count() > 1 ? f.child(1) : Formula();
  (i == 0 ? c0 : c1) = guard_path(f.child(i), pos, depth + 1, guard_at, constants, out);
  if (g >= 0) {
    const std::string& y = f.variable();
    return Formula::exists(
        y, Formula::conj(Formula::eq(Term::var(y), Term::constant(constants[g])), c0));
  }
  return rebuild(f, std::move(c0), std::move(c1));
}

}  // namespace detail

/// Fresh constant c_i of recursion level `level`, avoiding `vocab`.
inline std::string level_constant(std::size_t level, std::size_t i, const Vocabulary& vocab) {
  return fresh_symbol(vocab, "_c" + std::to_string(level) + "_" + std::to_string(i));
}

/// Guards every free variable y_i of the subformula at `pos` whose binder
/// lies on the path from the root: the innermost such EX y_i chi becomes
/// EX y_i (y_i=c_i & chi). Variables free in `phi` itself stay unguarded.
inline GuardedRewrite build_guarded(const Formula& phi, const Position& pos,
                                    std::size_t level = 0, const Vocabulary& vocab = {}) {
  if (!is_sigma1_nnf(phi)) throw PreconditionError("guarded rewrite needs a Sigma_1 NNF formula");
  GuardedRewrite g;
  g.phi0 = subformula_at(phi, pos);
  g.y_vars = free_vars(g.phi0);
  std::size_t count = std::max<std::size_t>(g.y_vars.size(), 1);
  for (std::size_t i = 1; i <= count; ++i) g.constants.push_back(level_constant(level, i, vocab));

  std::vector<int> guard_at(pos.size(), -1);
  for (std::size_t i = 0; i < g.y_vars.size(); ++i) {
    GuardKind kind = GuardKind::FreeInPhi;
    const Formula* cur = &phi;
    int innermost = -1;
    for (std::size_t d = 0; d < pos.size(); ++d) {
      if (cur->kind() == FormulaKind::Exists && cur->variable() == g.y_vars[i]) {
        innermost = static_cast<int>(d);
      }
      cur = &cur->child(pos[d]);
    }
    if (innermost >= 0) {
      kind = GuardKind::Bound;
      guard_at[innermost] = static_cast<int>(i);
    }
    g.guard_kinds.push_back(kind);
  }
  g.phi1 = detail::guard_path(phi, pos, 0, guard_at, g.constants, g.phi0_position);
  return g;
}

/// c=c or ~c=c.
inline Formula truth_atom(const std::string& c, bool value) {
  Formula a = Formula::eq(Term::constant(c), Term::constant(c));
  return value ? a : Formula::neg(a);
}

enum class Possibility : std::uint8_t { P0 = 0, P1 = 1, P2 = 2 };

struct TraceEntry {
  Assignment b;
  Possibility p = Possibility::P0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Per-level record of the tuple and the recursion branch taken.
using PossibilityTrace = std::vector<TraceEntry>;

enum class DncMode { Direct, Faithful };

struct DncOptions {
  /// The constant c: formulas with fewer than c*w + c nodes go to brute force.
  std::size_t cutoff = 24;
  DncMode mode = DncMode::Direct;
  /// Keep a snapshot of the trace at every call.
  bool record_history = false;
};

struct DncResult {
  EvalReport report;
  std::vector<PossibilityTrace> history;
};

namespace detail {

class DncEngine {
 public:
  DncEngine(const Formula& phi, std::size_t w, const Structure& a, const Assignment& abar,
            const DncOptions& opts, SpaceMeter& meter, Counters& counters)
      : phi_(phi),
        w_(w),
        a_(a),
        abar_(abar),
        opts_(opts),
        meter_(meter),
        counters_(counters),
        charge_(w * ceil_log2(a.universe_size()) + 2) {}

  bool run() {
    if (opts_.mode == DncMode::Direct) return direct(phi_, a_, abar_);
    return faithful();
  }

  std::vector<PossibilityTrace> history;

 private:
  struct State {
    Formula psi;
    Structure b;
    Assignment abar;
  };

  [[nodiscard]] bool is_leaf(const Formula& f) const {
    return subformula_count(f) < opts_.cutoff * w_ + opts_.cutoff;
  }

  std::vector<std::pair<std::string, Element>> expansion(const GuardedRewrite& g,
                                                         const Assignment& b) const {
    std::vector<std::pair<std::string, Element>> out;
    if (g.y_vars.empty()) {
      out.emplace_back(g.constants[0], 0);
    } else {
      for (std::size_t i = 0; i < g.y_vars.size(); ++i) out.emplace_back(g.constants[i], b.at(g.y_vars[i]));
    }
    return out;
  }

  // One application of the recursion function R.
  State step(State s, const TraceEntry& e, std::size_t level) const {
    if (is_leaf(s.psi)) return s;
    GuardedRewrite g = build_guarded(s.psi, split_subformula(s.psi), level, s.b.vocabulary());
    if (e.p == Possibility::P0) return {g.phi0, std::move(s.b), e.b};
    auto ext = expansion(g, e.b);
    Formula next = replace_at(g.phi1, g.phi0_position,
                              truth_atom(g.constants[0], e.p == Possibility::P1));
    return {std::move(next), s.b.with_constants(ext), std::move(s.abar)};
  }

  // Current formula, structure and assignment, recomputed from the trace.
  State reconstruct() const {
    State s{phi_, a_, abar_};
    for (std::size_t j = 0; j < trace_.size(); ++j) s = step(std::move(s), trace_[j], j);
    return s;
  }

  template <class Recurse>
  bool body(const Formula& phi, const Structure& b, const Assignment& abar, Recurse&& recurse) {
    ++counters_.recursive_calls;
    if (opts_.record_history) history.push_back(trace_);
    if (is_leaf(phi)) return brute_eval(phi, b, abar, meter_, counters_, 0);

    std::size_t level = trace_.size();
    GuardedRewrite g = build_guarded(phi, split_subformula(phi), level, b.vocabulary());
    std::vector<std::size_t> loop;
    for (std::size_t i = 0; i < g.y_vars.size(); ++i) {
      if (g.guard_kinds[i] == GuardKind::Bound) loop.push_back(i);
    }
    std::vector<Element> bvals(g.y_vars.size(), 0);
    for (std::size_t i = 0; i < g.y_vars.size(); ++i) {
      if (g.guard_kinds[i] == GuardKind::FreeInPhi) bvals[i] = abar.at(g.y_vars[i]);
    }
    for (TupleOdometer it(b.universe_size(), loop.size()); !it.done(); ++it) {
      ++counters_.assignments_enumerated;
      for (std::size_t j = 0; j < loop.size(); ++j) bvals[loop[j]] = (*it)[j];
      Assignment bbar = Assignment::zip(g.y_vars, bvals);

      bool r0;
      {
        trace_.push_back({bbar, Possibility::P0});
        SpaceMeter::Frame frame(meter_, charge_);
        r0 = recurse(g.phi0, b, bbar);
        trace_.pop_back();
      }
      Formula phi1b = replace_at(g.phi1, g.phi0_position, truth_atom(g.constants[0], r0));
      Structure bb = b.with_constants(expansion(g, bbar));
      bool r1;
      {
        trace_.push_back({bbar, r0 ? Possibility::P1 : Possibility::P2});
        SpaceMeter::Frame frame(meter_, charge_);
        r1 = recurse(phi1b, bb, abar);
        trace_.pop_back();
      }
      if (r1) return true;
    }
    return false;
  }

  bool direct(const Formula& phi, const Structure& b, const Assignment& abar) {
    return body(phi, b, abar, [this](const Formula& f, const Structure& s, const Assignment& x) {
      return direct(f, s, x);
    });
  }

  bool faithful() {
    State s = reconstruct();
    return body(s.psi, s.b, s.abar,
                [this](const Formula&, const Structure&, const Assignment&) { return faithful(); });
  }

  Formula phi_;
  std::size_t w_;
  const Structure& a_;
  Assignment abar_;
  DncOptions opts_;
  SpaceMeter& meter_;
  Counters& counters_;
  std::size_t charge_;
  PossibilityTrace trace_;
};

inline void check_dnc_input(const Formula& phi, std::size_t w, const Structure& a,
                            const Assignment& abar, const DncOptions& opts) {
  if (!is_sigma1_nnf(phi)) {
    throw PreconditionError("divide and conquer needs a Sigma_1 formula in NNF");
  }
  if (w < width(phi)) throw PreconditionError("w is below the width of the formula");
  if (opts.cutoff < 8) throw PreconditionError("cutoff constant must be at least 8");
  check_formula(phi, a.vocabulary());
  abar.require(free_vars(phi));
  abar.check_range(a.universe_size());
}

}  // namespace detail

/// Space-efficient evaluation of a Sigma_1 NNF formula: split off a third,
/// guard its variables by fresh constants, and decide the two halves
/// recursively for every tuple of values of the guarded variables.
/// Each pending recursive call holds w*ceil(log2|A|)+2 accounted bits.
inline DncResult eval_dnc_sigma1(const Formula& phi, std::size_t w, const Structure& a,
                                 const Assignment& abar = {}, const DncOptions& opts = {}) {
  auto start = std::chrono::steady_clock::now();
  detail::check_dnc_input(phi, w, a, abar, opts);
  SpaceMeter meter(CostModel::Dnc);
  DncResult r;
  r.report.engine = "dnc";
  detail::DncEngine engine(phi, w, a, abar, opts, meter, r.report.counters);
  r.report.answer = engine.run();
  r.history = std::move(engine.history);
  r.report.peak_bits = meter.peak_bits();
  r.report.peak_depth = meter.peak_depth();
  r.report.runs.push_back({subformula_count(phi), w, a.universe_size(), meter.peak_depth(),
                           meter.peak_bits()});
  r.report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace fomc
