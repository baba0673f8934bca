#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fomc/assignment.hpp"
#include "fomc/dnc.hpp"
#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/meter.hpp"
#include "fomc/metrics.hpp"
#include "fomc/rewrite.hpp"
#include "fomc/structure.hpp"

namespace fomc {

namespace detail {

struct Abstraction {
  std::vector<Formula> parts;
  std::vector<std::vector<std::string>> vars;
};

inline const std::string kTruthHolder = "_T";

inline std::string part_relation(std::size_t t, std::size_t j) {
  return "_R" + std::to_string(t) + "_" + std::to_string(j);
}

// Replaces each maximal subformula in Pi_{t-1} by an atom over its free
// variables. Sentences become a unary atom on the holder constant.
inline Formula abstract_parts(const Formula& f, std::size_t t, Abstraction& out) {
  if (alternation_levels(f).pi <= t - 1) {
    std::size_t j = out.parts.size() + 1;
    auto xs = free_vars(f);
    out.parts.push_back(f);
    out.vars.push_back(xs);
    std::vector<Term> args;
    if (xs.empty()) {
      args.push_back(Term::constant(kTruthHolder));
    } else {
      for (const auto& x : xs) args.push_back(Term::var(x));
    }
    return Formula::rel(part_relation(t, j), std::move(args));
  }
  Formula c0 = abstract_parts(f.child(0), t, out);
  Formula c1 = f.child_count() > 1 ? abstract_parts(f.child(1), t, out) : Formula();
  return rebuild(f, std::move(c0), std::move(c1));
}

class SigmaT {
 public:
  SigmaT(const DncOptions& opts, EvalReport& report) : opts_(opts), report_(report) {}

  // `t` is the cumulative Sigma level of `f`.
  bool run(const Formula& f, std::size_t t, const Structure& a, const Assignment& alpha) {
    Formula g = nnf(f);
    std::size_t w = width(f);
    if (t <= 1) return dnc(g, w, a, alpha);

    Abstraction abs;
    Formula star = abstract_parts(g, t, abs);
    std::size_t n = a.universe_size();
    Vocabulary vocab;
    bool holder = false;
    for (std::size_t j = 0; j < abs.parts.size(); ++j) {
      vocab.add_relation(part_relation(t, j + 1), std::max<std::size_t>(abs.vars[j].size(), 1));
      holder = holder || abs.vars[j].empty();
    }
    if (holder) vocab.add_constant(kTruthHolder);
    Structure star_a(vocab, n);
    for (std::size_t j = 0; j < abs.parts.size(); ++j) {
      // psi_j holds at b iff the Sigma_{t-1} formula nnf(~psi_j) fails there.
      Formula neg = nnf(Formula::neg(abs.parts[j]));
      std::size_t level = alternation_levels(neg).sigma;
      std::vector<Tuple> rows;
      const auto& xs = abs.vars[j];
      for (TupleOdometer it(n, xs.size()); !it.done(); ++it) {
        ++report_.counters.assignments_enumerated;
        if (!run(neg, level, a, Assignment::zip(xs, *it))) rows.push_back(*it);
      }
      if (xs.empty()) {
        bool holds = !rows.empty();
        rows.clear();
        if (holds) {
          for (std::size_t e = 0; e < n; ++e) rows.push_back({static_cast<Element>(e)});
        }
      }
      star_a.set_relation(part_relation(t, j + 1), std::move(rows));
    }
    return dnc(star, w, star_a, alpha);
  }

 private:
  bool dnc(const Formula& f, std::size_t w, const Structure& a, const Assignment& alpha) {
    DncResult r = eval_dnc_sigma1(f, w, a, alpha.restrict(free_vars(f)), opts_);
    report_.counters += r.report.counters;
    report_.peak_bits = std::max(report_.peak_bits, r.report.peak_bits);
    report_.peak_depth = std::max(report_.peak_depth, r.report.peak_depth);
    report_.runs.insert(report_.runs.end(), r.report.runs.begin(), r.report.runs.end());
    return r.report.answer;
  }

  DncOptions opts_;
  EvalReport& report_;
};

}  // namespace detail

/// Sigma_t evaluation. For t >= 2 the maximal Pi_{t-1} parts are decided
/// recursively and tabulated as fresh relations over the same universe; the
/// remaining Sigma_1 skeleton goes to the divide-and-conquer engine.
inline EvalReport eval_sigma_t(const Formula& phi, const Structure& a, const Assignment& alpha = {},
                               const DncOptions& opts = {}) {
  auto start = std::chrono::steady_clock::now();
  auto cls = classify(phi);
  if (!cls.sigma_level) throw UnclassifiedError("formula has no Sigma_t level");
  check_formula(phi, a.vocabulary());
  alpha.require(free_vars(phi));
  EvalReport r;
  r.engine = "dnc";
  r.answer = detail::SigmaT(opts, r).run(phi, *cls.sigma_level, a, alpha);
  r.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace fomc
