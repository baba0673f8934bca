#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fomc/evaluate.hpp"
#include "fomc/generators.hpp"
#include "fomc/reductions.hpp"
#include "fomc/rewrite.hpp"

namespace fomc {

inline constexpr const char* kBenchHeader =
    "family,k,norm,width,universe,engine,answer,peakAccountedBits,peakDepth,wallMs";

struct BenchRow {
  std::string family;
  std::size_t k = 0;
  std::size_t norm = 0;
  std::size_t width = 0;
  std::size_t universe = 0;
  std::string engine;
  bool answer = false;
  std::size_t peak_bits = 0;
  std::size_t peak_depth = 0;
  double wall_ms = 0;
};

inline std::string bench_csv_line(const BenchRow& r) {
  std::ostringstream out;
  out << r.family << ',' << r.k << ',' << r.norm << ',' << r.width << ',' << r.universe << ','
      << r.engine << ',' << (r.answer ? "true" : "false") << ',' << r.peak_bits << ','
      << r.peak_depth << ',' << r.wall_ms;
  return out.str();
}

struct BenchConfig {
  /// "chain" or "random".
  std::string family = "chain";
  std::vector<std::size_t> ks = {4, 8, 16, 32};
  std::vector<Engine> engines = {Engine::Brute, Engine::Dnc};
  /// chain: vertices of the path s -> ... -> t. random: universe size.
  std::size_t n = 2;
  std::uint64_t seed = 0;
  bool timing = true;
};

/// One instance per k: the chain sentence over a directed path, or a random
/// Sigma_1 sentence with norm k. Every engine runs on every instance.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.family != "chain" && cfg.family != "random") {
    throw PreconditionError("unknown bench family '" + cfg.family + "'");
  }
  std::vector<BenchRow> rows;
  Rng rng(cfg.seed);
  for (std::size_t k : cfg.ks) {
    Formula phi;
    Structure a(Vocabulary{}, 1);
    if (cfg.family == "chain") {
      Digraph g(cfg.n);
      for (Vertex v = 0; v + 1 < cfg.n; ++v) g.add_edge(v, v + 1);
      a = chain_structure(g, 0, cfg.n - 1);
      phi = chain_sentence(k);
    } else {
      FormulaGenParams p;
      p.vars = 2;
      p.level = 1;
      p.norm = k;
      phi = nnf(random_formula(p, rng));
      a = random_structure(p.vocab, cfg.n, 0.4, rng);
    }
    for (Engine e : cfg.engines) {
      EvalReport r = evaluate(phi, a, e);
      rows.push_back({cfg.family, k, subformula_count(phi), width(phi), a.universe_size(),
                      engine_name(e), r.answer, r.peak_bits, r.peak_depth,
                      cfg.timing ? r.wall_ms : 0.0});
    }
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << '\n';
  for (const auto& r : rows) out << bench_csv_line(r) << '\n';
}

}  // namespace fomc
