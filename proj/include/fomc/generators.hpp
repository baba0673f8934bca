#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fomc/assignment.hpp"
#include "fomc/digraph.hpp"
#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/metrics.hpp"
#include "fomc/structure.hpp"
#include "fomc/vocabulary.hpp"

namespace fomc {

/// Seeded generator; bounded draws use plain modulo so the streams are the
/// same on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// P/1, R/2 and a constant c; with functions also f/1 and g/2.
inline Vocabulary standard_vocabulary(bool functions = false) {
  Vocabulary v;
  v.add_relation("P", 1).add_relation("R", 2).add_constant("c");
  if (functions) v.add_function("f", 1).add_function("g", 2);
  return v;
}

/// Each tuple of each relation is present with probability `density`;
/// constants and function tables are uniform.
inline Structure random_structure(const Vocabulary& v, std::size_t n, double density, Rng& rng) {
  Structure a(v, n);
  for (const auto& r : v.relations()) {
    std::vector<Tuple> tuples;
    for (TupleOdometer it(n, r.arity); !it.done(); ++it) {
      if (rng.chance(density)) tuples.push_back(*it);
    }
    a.set_relation(r.name, std::move(tuples));
  }
  for (const auto& c : v.constants()) a.set_constant(c, static_cast<Element>(rng.below(n)));
  for (const auto& f : v.functions()) {
    std::vector<Element> table(checked_power(n, f.arity));
    for (auto& e : table) e = static_cast<Element>(rng.below(n));
    a.set_function(f.name, std::move(table));
  }
  return a;
}

/// Each ordered pair, self-loops included, is an edge with probability p.
inline Digraph random_digraph(std::size_t n, double p, Rng& rng) {
  Digraph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (rng.chance(p)) g.add_edge(u, v);
    }
  }
  return g;
}

struct FormulaGenParams {
  Vocabulary vocab = standard_vocabulary();
  /// Variable pool x1..xs.
  std::size_t vars = 2;
  /// Sigma_t (or Pi_t) level.
  std::size_t level = 1;
  bool pi = false;
  /// Target node count; the result has exactly this many nodes.
  std::size_t norm = 20;
  /// Hit the level exactly rather than anywhere up to it.
  bool exact = true;
  std::size_t max_quantifier_depth = 6;
  double equality_prob = 0.25;
  double negation_prob = 0.15;
  /// Nesting of function applications inside atoms.
  std::size_t max_term_depth = 1;
};

namespace detail {

class FormulaGen {
 public:
  FormulaGen(const FormulaGenParams& p, Rng& rng) : p_(p), rng_(rng) {
    for (std::size_t i = 1; i <= p.vars; ++i) pool_.push_back("x" + std::to_string(i));
  }

  Formula top() {
    std::size_t need = p_.exact ? p_.level + 1 : 1;
    if (p_.norm < need) throw PreconditionError("norm too small for the requested level");
    if (p_.exact && p_.level > p_.max_quantifier_depth) {
      throw PreconditionError("level exceeds the quantifier depth cap");
    }
    if (p_.level > 0 && p_.vars == 0) throw PreconditionError("quantifiers need variables");
    if (p_.vocab.constants().empty() && p_.vocab.relations().empty()) {
      throw PreconditionError("vocabulary has no relation or constant");
    }
    std::vector<std::string> scope;
    return gen(p_.level, !p_.pi, p_.norm, p_.exact, scope, 0);
  }

 private:
  static std::size_t min_size(std::size_t t, bool exact) { return exact ? t + 1 : 1; }

  Formula gen(std::size_t t, bool sigma, std::size_t n, bool exact,
              std::vector<std::string>& scope, std::size_t qd) {
    if (t == 0) return qf(n, scope);
    bool can_quant = qd < p_.max_quantifier_depth && n >= 2;
    // Quantifiers left for the exact part below.
    bool exact_ok_after_quant = !exact || (qd + t <= p_.max_quantifier_depth);
    std::vector<int> options;
    if (can_quant && exact_ok_after_quant && n - 1 >= min_size(t - 1, exact)) {
      options.insert(options.end(), {0, 0, 0});
    }
    if (n >= 3 && n - 1 >= min_size(t, exact) + 1) options.insert(options.end(), {1, 1, 1});
    if (n >= 2 && n - 1 >= min_size(t, exact)) options.push_back(2);
    if (!exact) options.insert(options.end(), {3, 3});
    if (options.empty()) {
      if (exact) throw PreconditionError("cannot reach the requested level in this size");
      return qf(n, scope);
    }
    switch (options[rng_.below(options.size())]) {
      case 0: {
        // Own quantifier; the body stays at this level or drops one.
        std::string v = pool_[rng_.below(pool_.size())];
        scope.push_back(v);
        Formula body;
        bool stay = n - 1 >= min_size(t, exact) && rng_.chance(0.4) &&
                    qd + 1 + (exact ? t : 0) <= p_.max_quantifier_depth;
        if (stay) {
          body = gen(t, sigma, n - 1, exact, scope, qd + 1);
        } else {
          body = gen(t - 1, !sigma, n - 1, exact, scope, qd + 1);
        }
        scope.pop_back();
        return sigma ? Formula::exists(v, std::move(body)) : Formula::forall(v, std::move(body));
      }
      case 1: {
        std::size_t rest = n - 1;
        bool left_exact = rng_.chance(0.5);
        std::size_t need_l = left_exact ? min_size(t, exact) : 1;
        std::size_t need_r = left_exact ? 1 : min_size(t, exact);
        std::size_t a = rng_.between(need_l, rest - need_r);
        Formula l = gen(t, sigma, a, exact && left_exact, scope, qd);
        Formula r = gen(t, sigma, rest - a, exact && !left_exact, scope, qd);
        return rng_.chance(0.5) ? Formula::conj(std::move(l), std::move(r))
                                : Formula::disj(std::move(l), std::move(r));
      }
      case 2:
        return Formula::neg(gen(t, !sigma, n - 1, exact, scope, qd));
      default:
        return gen(t - 1, rng_.chance(0.5), n, false, scope, qd);
    }
  }

  Formula qf(std::size_t n, std::vector<std::string>& scope) {
    if (n == 1) return atom(scope);
    if (n == 2 || rng_.chance(p_.negation_prob)) return Formula::neg(qf(n - 1, scope));
    std::size_t a = rng_.between(1, n - 2);
    Formula l = qf(a, scope);
    Formula r = qf(n - 1 - a, scope);
    return rng_.chance(0.5) ? Formula::conj(std::move(l), std::move(r))
                            : Formula::disj(std::move(l), std::move(r));
  }

  Term term(const std::vector<std::string>& scope, std::size_t depth) {
    const auto& funs = p_.vocab.functions();
    if (depth < p_.max_term_depth && !funs.empty() && rng_.chance(0.3)) {
      const auto& f = funs[rng_.below(funs.size())];
      std::vector<Term> args;
      for (std::size_t i = 0; i < f.arity; ++i) args.push_back(term(scope, depth + 1));
      return Term::apply(f.name, std::move(args));
    }
    const auto& cs = p_.vocab.constants();
    if (scope.empty() || (!cs.empty() && rng_.chance(0.15))) {
      if (cs.empty()) throw PreconditionError("sentence atoms need a constant outside quantifiers");
      return Term::constant(cs[rng_.below(cs.size())]);
    }
    return Term::var(scope[rng_.below(scope.size())]);
  }

  Formula atom(const std::vector<std::string>& scope) {
    const auto& rels = p_.vocab.relations();
    if (rels.empty() || rng_.chance(p_.equality_prob)) {
      return Formula::eq(term(scope, 0), term(scope, 0));
    }
    const auto& r = rels[rng_.below(rels.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < r.arity; ++i) args.push_back(term(scope, 0));
    return Formula::rel(r.name, std::move(args));
  }

  const FormulaGenParams& p_;
  Rng& rng_;
  std::vector<std::string> pool_;
};

}  // namespace detail

/// Random sentence built top-down from the Sigma_t / Pi_t grammar, with
/// exactly `norm` nodes and variables from x1..x<vars>.
inline Formula random_formula(const FormulaGenParams& p, Rng& rng) {
  return detail::FormulaGen(p, rng).top();
}

/// Norm drawn uniformly within 20% of `target`.
inline std::size_t jitter_norm(std::size_t target, Rng& rng) {
  std::size_t lo = std::max<std::size_t>(1, target - target / 5);
  return rng.between(lo, target + target / 5);
}

}  // namespace fomc
