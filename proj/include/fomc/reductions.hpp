#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fomc/assignment.hpp"
#include "fomc/digraph.hpp"
#include "fomc/error.hpp"
#include "fomc/formula.hpp"
#include "fomc/metrics.hpp"
#include "fomc/rewrite.hpp"
#include "fomc/semantics.hpp"
#include "fomc/structure.hpp"

namespace fomc {

/// phi'_k(x): a path of length at most k from x into T, using only x and y.
/// phi'_0 = T(x); phi'_{k+1} = EX y. ((y=x | E(x,y)) & EX x. (x=y & phi'_k)).
inline Formula chain_body(std::size_t k) {
  Formula f = Formula::rel("T", {Term::var("x")});
  for (std::size_t i = 0; i < k; ++i) {
    Formula step = Formula::disj(Formula::eq(Term::var("y"), Term::var("x")),
                                 Formula::rel("E", {Term::var("x"), Term::var("y")}));
    Formula back = Formula::exists(
        "x", Formula::conj(Formula::eq(Term::var("x"), Term::var("y")), std::move(f)));
    f = Formula::exists("y", Formula::conj(std::move(step), std::move(back)));
  }
  return f;
}

/// EX x. (S(x) & phi'_k(x)), with 8k+4 nodes.
inline Formula chain_sentence(std::size_t k) {
  return Formula::exists("x", Formula::conj(Formula::rel("S", {Term::var("x")}), chain_body(k)));
}

inline Vocabulary chain_vocabulary() {
  Vocabulary v;
  v.add_relation("E", 2).add_relation("S", 1).add_relation("T", 1);
  return v;
}

/// The graph as an {E,S,T}-structure with S={s}, T={t}.
inline Structure chain_structure(const Digraph& g, Vertex s, Vertex t) {
  if (g.vertex_count() == 0) throw PreconditionError("graph has no vertices");
  g.check(s);
  g.check(t);
  Structure a(chain_vocabulary(), g.vertex_count());
  std::vector<Tuple> edges;
  for (auto [u, v] : g.edges()) {
    edges.push_back({static_cast<Element>(u), static_cast<Element>(v)});
  }
  a.set_relation("E", std::move(edges));
  a.set_relation("S", {{static_cast<Element>(s)}});
  a.set_relation("T", {{static_cast<Element>(t)}});
  return a;
}

/// Bounded reachability as a two-variable Sigma_1 model-checking instance.
inline std::pair<Structure, Formula> stcon_to_mc(const StconInstance& inst) {
  return {chain_structure(inst.graph, inst.source, inst.target), chain_sentence(inst.bound)};
}

/// Vertex (psi, alpha, b) of the configuration graph.
struct ConfigVertex {
  Position position;
  Assignment alpha;
  bool bit = false;
};

struct McStcon {
  StconInstance instance;
  /// Decoding of every vertex id.
  std::vector<ConfigVertex> vertices;
};

namespace detail {

struct ConfigNode {
  Formula f;
  Position pos;
  std::vector<std::string> vars;
  std::size_t offset = 0;
  std::size_t rows = 0;
  int child[2] = {-1, -1};
};

inline int collect_config_nodes(const Formula& f, Position& pos, std::size_t n,
                                std::vector<ConfigNode>& out, std::size_t& next) {
  int id = static_cast<int>(out.size());
  out.push_back({f, pos, free_vars(f), next, 0, {-1, -1}});
  out[id].rows = checked_power(n, out[id].vars.size());
  next += 2 * out[id].rows;
  for (std::size_t i = 0; i < f.child_count(); ++i) {
    pos.push_back(static_cast<std::uint8_t>(i));
    int c = collect_config_nodes(f.child(i), pos, n, out, next);
    pos.pop_back();
    out[id].child[i] = c;
  }
  return id;
}

// Lexicographic index of the values of `vars` under the parent row.
inline std::size_t row_index(const std::vector<std::string>& vars,
                             const std::vector<std::string>& parent_vars, const Tuple& row,
                             std::size_t n, const std::string* extra = nullptr,
                             Element extra_value = 0) {
  std::size_t idx = 0;
  for (const auto& v : vars) {
    Element e;
    if (extra && v == *extra) {
      e = extra_value;
    } else {
      auto it = std::find(parent_vars.begin(), parent_vars.end(), v);
      e = row[static_cast<std::size_t>(it - parent_vars.begin())];
    }
    idx = idx * n + e;
  }
  return idx;
}

}  // namespace detail

/// Configuration graph of a Sigma_1 NNF sentence: (phi, {}, 0) reaches
/// (phi, {}, 1) iff A satisfies phi, by a path of length at most 2||phi||-1.
inline McStcon mc_to_stcon(const Structure& a, const Formula& phi) {
  if (!is_sigma1_nnf(phi)) throw PreconditionError("mc2stcon needs a Sigma_1 NNF formula");
  if (!is_sentence(phi)) throw PreconditionError("mc2stcon needs a sentence");
  check_formula(phi, a.vocabulary());
  std::size_t n = a.universe_size();
  std::vector<detail::ConfigNode> nodes;
  std::size_t total = 0;
  Position pos;
  detail::collect_config_nodes(phi, pos, n, nodes, total);

  McStcon out;
  Digraph g(total);
  out.vertices.resize(total);
  auto vid = [](const detail::ConfigNode& node, std::size_t row, bool bit) {
    return node.offset + 2 * row + (bit ? 1 : 0);
  };

  for (const auto& node : nodes) {
    std::size_t r = 0;
    for (TupleOdometer it(n, node.vars.size()); !it.done(); ++it, ++r) {
      const Tuple& row = *it;
      Assignment alpha = Assignment::zip(node.vars, row);
      for (int b = 0; b < 2; ++b) out.vertices[vid(node, r, b)] = {node.pos, alpha, b == 1};
      const Formula& f = node.f;
      if (f.is_literal()) {
        bool holds = f.is_atom() ? eval_atom(f, a, alpha) : !eval_atom(f.child(0), a, alpha);
        if (holds) g.add_edge(vid(node, r, false), vid(node, r, true));
        continue;
      }
      if (f.kind() == FormulaKind::Or || f.kind() == FormulaKind::And) {
        const auto& l = nodes[node.child[0]];
        const auto& rt = nodes[node.child[1]];
        std::size_t li = detail::row_index(l.vars, node.vars, row, n);
        std::size_t ri = detail::row_index(rt.vars, node.vars, row, n);
        if (f.kind() == FormulaKind::Or) {
          g.add_edge(vid(node, r, false), vid(l, li, false));
          g.add_edge(vid(l, li, true), vid(node, r, true));
          g.add_edge(vid(node, r, false), vid(rt, ri, false));
          g.add_edge(vid(rt, ri, true), vid(node, r, true));
        } else {
          g.add_edge(vid(node, r, false), vid(l, li, false));
          g.add_edge(vid(l, li, true), vid(rt, ri, false));
          g.add_edge(vid(rt, ri, true), vid(node, r, true));
        }
        continue;
      }
      // EX y. chi
      const auto& c = nodes[node.child[0]];
      for (std::size_t e = 0; e < n; ++e) {
        std::size_t ci = detail::row_index(c.vars, node.vars, row, n, &f.variable(),
                                           static_cast<Element>(e));
        g.add_edge(vid(node, r, false), vid(c, ci, false));
        g.add_edge(vid(c, ci, true), vid(node, r, true));
      }
    }
  }
  out.instance = {std::move(g), 0, 1, 2 * subformula_count(phi)};
  return out;
}

}  // namespace fomc
