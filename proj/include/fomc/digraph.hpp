#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fomc/error.hpp"

namespace fomc {

using Vertex = std::size_t;

/// Directed graph on vertices 0..n-1; self-loops allowed, parallel edges
/// collapsed.
class Digraph {
 public:
  explicit Digraph(std::size_t n = 0) : n_(n), out_(n), matrix_(n * n, false) {}

  Digraph& add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (!matrix_[u * n_ + v]) {
      matrix_[u * n_ + v] = true;
      auto& adj = out_[u];
      adj.insert(std::upper_bound(adj.begin(), adj.end(), v), v);
      ++edges_;
    }
    return *this;
  }

  [[nodiscard]] std::size_t vertex_count() const { return n_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_; }
  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const { return matrix_[u * n_ + v]; }
  [[nodiscard]] const std::vector<Vertex>& successors(Vertex u) const { return out_[u]; }

  /// Edges in lexicographic order.
  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : out_[u]) out.emplace_back(u, v);
    }
    return out;
  }

  void check(Vertex v) const {
    if (v >= n_) {
      throw PreconditionError("vertex " + std::to_string(v) + " out of range (n=" +
                              std::to_string(n_) + ")");
    }
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<bool> matrix_;
  std::size_t edges_ = 0;
};

/// Bounded s-t reachability instance: is there a path of length <= k?
struct StconInstance {
  Digraph graph;
  Vertex source = 0;
  Vertex target = 0;
  std::size_t bound = 0;
};

}  // namespace fomc
