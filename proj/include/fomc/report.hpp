#pragma once

#include <string>

#include <json.hpp>

#include "fomc/meter.hpp"
#include "fomc/metrics.hpp"
#include "fomc/reach.hpp"

namespace fomc {

inline nlohmann::ordered_json optional_level(const std::optional<std::size_t>& level) {
  if (!level) return nullptr;
  return *level;
}

inline nlohmann::ordered_json classification_json(const Classification& c) {
  nlohmann::ordered_json j;
  j["norm"] = c.subformula_count;
  j["width"] = c.width;
  j["vars"] = c.num_variables;
  j["sigmaLevel"] = optional_level(c.sigma_level);
  j["piLevel"] = optional_level(c.pi_level);
  j["encodingLength"] = c.encoding_length;
  return j;
}

/// The evaluation report: answer, engine, metrics, space, counters, wallMs.
inline nlohmann::ordered_json report_json(const EvalReport& r, const Classification& c) {
  nlohmann::ordered_json j;
  j["answer"] = r.answer;
  j["engine"] = r.engine;
  nlohmann::ordered_json m;
  m["norm"] = c.subformula_count;
  m["width"] = c.width;
  m["vars"] = c.num_variables;
  m["sigmaLevel"] = optional_level(c.sigma_level);
  m["piLevel"] = optional_level(c.pi_level);
  j["metrics"] = m;
  j["space"] = {{"peakAccountedBits", r.peak_bits}, {"peakDepth", r.peak_depth}};
  j["counters"] = {{"recursiveCalls", r.counters.recursive_calls},
                   {"assignmentsEnumerated", r.counters.assignments_enumerated}};
  j["wallMs"] = r.wall_ms;
  return j;
}

inline nlohmann::ordered_json reach_json(const ReachReport& r, const std::string& algo) {
  nlohmann::ordered_json j;
  j["answer"] = r.answer;
  j["algo"] = algo;
  j["peakDepth"] = r.peak_depth;
  j["accountedUnits"] = r.accounted_units;
  j["budgetUsed"] = r.budget_used;
  if (algo == "diag") j["karity"] = r.karity_used;
  if (algo == "ck" || algo == "diag") j["levels"] = r.levels;
  j["calls"] = r.calls;
  return j;
}

}  // namespace fomc
