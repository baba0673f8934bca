#pragma once

#include <string>
#include <string_view>

#include "fomc/bottom_up.hpp"
#include "fomc/brute.hpp"
#include "fomc/error.hpp"
#include "fomc/metrics.hpp"
#include "fomc/rewrite.hpp"
#include "fomc/sigma_t.hpp"

namespace fomc {

enum class Engine { Brute, BottomUp, Dnc, Auto };

inline Engine parse_engine(std::string_view s) {
  if (s == "brute") return Engine::Brute;
  if (s == "bottomup") return Engine::BottomUp;
  if (s == "dnc") return Engine::Dnc;
  if (s == "auto") return Engine::Auto;
  throw PreconditionError("unknown engine '" + std::string(s) + "'");
}

inline std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Brute: return "brute";
    case Engine::BottomUp: return "bottomup";
    case Engine::Dnc: return "dnc";
    case Engine::Auto: return "auto";
  }
  return "";
}

/// Dispatch. `Auto` prefers the Sigma_t evaluator, then bottom-up on the
/// NNF for relational formulas, then brute force.
inline EvalReport evaluate(const Formula& phi, const Structure& a, Engine engine,
                           const Assignment& alpha = {}, const DncOptions& opts = {}) {
  switch (engine) {
    case Engine::Brute:
      return eval_brute(phi, a, alpha);
    case Engine::BottomUp:
      return eval_bottom_up(phi, a, alpha).report;
    case Engine::Dnc:
      return eval_sigma_t(phi, a, alpha, opts);
    case Engine::Auto:
      if (classify(phi).sigma_level) return eval_sigma_t(phi, a, alpha, opts);
      if (!detail::has_function_terms(phi)) return eval_bottom_up(nnf(phi), a, alpha).report;
      return eval_brute(phi, a, alpha);
  }
  return {};
}

}  // namespace fomc
