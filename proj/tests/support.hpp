#pragma once

#include <string>

#include "fomc/fomc.hpp"

namespace support {

inline fomc::Formula F(const std::string& text) { return fomc::parse_formula_infer(text).first; }

/// Path 0 -> 1 -> ... -> n-1.
inline fomc::Digraph path_graph(std::size_t n) {
  fomc::Digraph g(n);
  for (fomc::Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline fomc::Structure graph_structure(const fomc::Digraph& g) {
  fomc::Vocabulary v;
  v.add_relation("E", 2);
  fomc::Structure a(v, g.vertex_count());
  std::vector<fomc::Tuple> edges;
  for (auto [u, w] : g.edges()) {
    edges.push_back({static_cast<fomc::Element>(u), static_cast<fomc::Element>(w)});
  }
  a.set_relation("E", std::move(edges));
  return a;
}

/// A random sentence of the kind the cross-engine suites use.
inline fomc::Formula random_sentence(fomc::Rng& rng, std::size_t vars, std::size_t level,
                                     std::size_t max_norm, bool functions = false,
                                     bool pi = false) {
  fomc::FormulaGenParams p;
  p.vocab = fomc::standard_vocabulary(functions);
  p.vars = vars;
  p.level = level;
  p.pi = pi;
  p.norm = rng.between(level + 1, max_norm);
  return fomc::random_formula(p, rng);
}

}  // namespace support
