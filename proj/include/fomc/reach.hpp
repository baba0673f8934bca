#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "fomc/digraph.hpp"
#include "fomc/error.hpp"
#include "fomc/structure.hpp"

namespace fomc {

struct ReachReport {
  bool answer = false;
  std::size_t peak_depth = 0;
  std::size_t accounted_units = 0;
  /// Diagonal runs: the budget S*unitScale that produced the verdict.
  std::size_t budget_used = 0;
  /// Diagonal runs: the arity whose run finished within the budget.
  std::size_t karity_used = 0;
  /// Recursion levels of a k-ary run.
  std::size_t levels = 0;
  bool aborted = false;
  std::uint64_t calls = 0;
};

/// Length of a shortest s-t path, if any.
inline std::optional<std::size_t> bfs_distance(const Digraph& g, Vertex s, Vertex t) {
  g.check(s);
  g.check(t);
  std::vector<std::size_t> dist(g.vertex_count(), SIZE_MAX);
  std::queue<Vertex> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    if (u == t) return dist[u];
    for (Vertex v : g.successors(u)) {
      if (dist[v] == SIZE_MAX) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return std::nullopt;
}

/// Is there a path of length at most k (any length when k is absent)?
/// Every vertex reaches itself by the empty path.
inline bool bfs_reach(const Digraph& g, Vertex s, Vertex t,
                      std::optional<std::size_t> k = std::nullopt) {
  auto d = bfs_distance(g, s, t);
  return d && (!k || *d <= *k);
}

struct SavitchOptions {
  /// Cache (u, v, k) verdicts. Saves time only; depth is unchanged.
  bool memoize = false;
};

namespace detail {

class Savitch {
 public:
  Savitch(const Digraph& g, bool memo) : g_(g), memo_(memo) {}

  bool reach(Vertex u, Vertex v, std::size_t k, std::size_t depth) {
    ++report.calls;
    report.peak_depth = std::max(report.peak_depth, depth);
    if (k <= 1) return u == v || (k == 1 && g_.has_edge(u, v));
    std::uint64_t key = 0;
    if (memo_) {
      std::uint64_t n = g_.vertex_count();
      key = (static_cast<std::uint64_t>(k) * n + u) * n + v;
      auto it = cache_.find(key);
      if (it != cache_.end()) {
        // A cached verdict still stands for the whole subtree.
        report.peak_depth = std::max(report.peak_depth, depth + ceil_log2(k));
        return it->second;
      }
    }
    bool found = false;
    for (Vertex mid = 0; mid < g_.vertex_count() && !found; ++mid) {
      found = reach(u, mid, (k + 1) / 2, depth + 1) && reach(mid, v, k / 2, depth + 1);
    }
    if (memo_) cache_.emplace(key, found);
    return found;
  }

  ReachReport report;

 private:
  const Digraph& g_;
  bool memo_;
  std::unordered_map<std::uint64_t, bool> cache_;
};

}  // namespace detail

/// Midpoint recursion: reach(u,v,k) iff some mid has reach(u,mid,ceil(k/2))
/// and reach(mid,v,floor(k/2)). The recursion is ceil(log2 k) deep.
inline ReachReport savitch_reach(const Digraph& g, Vertex s, Vertex t, std::size_t k,
                                 const SavitchOptions& opts = {}) {
  g.check(s);
  g.check(t);
  detail::Savitch run(g, opts.memoize);
  run.report.answer = run.reach(s, t, k, 0);
  run.report.accounted_units = run.report.peak_depth * 2 * ceil_log2(g.vertex_count());
  return run.report;
}

/// Bounded-path solver over a graph known only through edge queries: is
/// there a path from u to v with at most k edges?
using EdgeQuery = std::function<bool(Vertex, Vertex)>;
using BoundedPathSolver =
    std::function<bool(std::size_t n, Vertex u, Vertex v, std::size_t k, const EdgeQuery& edge)>;

/// Depth-first search over simple paths of length at most k.
inline bool dfs_bounded_path(std::size_t n, Vertex u, Vertex v, std::size_t k,
                             const EdgeQuery& edge) {
  if (u == v) return true;
  std::vector<bool> on_path(n, false);
  std::function<bool(Vertex, std::size_t)> go = [&](Vertex x, std::size_t left) -> bool {
    if (left == 0) return false;
    if (edge(x, v)) return true;
    if (left == 1) return false;
    on_path[x] = true;
    for (Vertex y = 0; y < n; ++y) {
      if (y == x || y == v || on_path[y]) continue;
      if (edge(x, y) && go(y, left - 1)) {
        on_path[x] = false;
        return true;
      }
    }
    on_path[x] = false;
    return false;
  };
  return go(u, k);
}

struct CkOptions {
  BoundedPathSolver inner = dfs_bounded_path;
  /// Abort once the accounted units exceed this.
  std::optional<std::size_t> budget;
  /// Cache (i, u, v) verdicts. Saves time only.
  bool memoize = true;
};

namespace detail {

struct BudgetExceeded {};

class Ck {
 public:
  Ck(const Digraph& g, std::size_t k, const CkOptions& opts)
      : g_(g), k_(k), opts_(opts), charge_(2 * ceil_log2(g.vertex_count()) + ceil_log2(k)) {}

  // Edge of G^k_i: a path of length at most k^i in G.
  bool edge(std::size_t i, Vertex u, Vertex v) {
    ++report.calls;
    if (i == 0) return u == v || g_.has_edge(u, v);
    std::uint64_t key = 0;
    if (opts_.memoize) {
      std::uint64_t n = g_.vertex_count();
      key = (static_cast<std::uint64_t>(i) * n + u) * n + v;
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    units_ += charge_;
    depth_ += 1;
    report.accounted_units = std::max(report.accounted_units, units_);
    report.peak_depth = std::max(report.peak_depth, depth_);
    if (opts_.budget && units_ > *opts_.budget) throw BudgetExceeded{};
    EdgeQuery lower = [this, i](Vertex a, Vertex b) { return edge(i - 1, a, b); };
    bool r = opts_.inner(g_.vertex_count(), u, v, k_, lower);
    units_ -= charge_;
    depth_ -= 1;
    if (opts_.memoize) cache_.emplace(key, r);
    return r;
  }

  ReachReport report;

 private:
  const Digraph& g_;
  std::size_t k_;
  const CkOptions& opts_;
  std::size_t charge_;
  std::size_t units_ = 0;
  std::size_t depth_ = 0;
  std::unordered_map<std::uint64_t, bool> cache_;
};

}  // namespace detail

/// Least l with k^l >= n-1.
inline std::size_t ck_levels(std::size_t n, std::size_t k) {
  std::size_t l = 0;
  std::size_t reach = 1;
  while (reach + 1 < n) {
    reach = reach > SIZE_MAX / k ? SIZE_MAX : reach * k;
    ++l;
  }
  return l;
}

/// Unbounded reachability through the tower G = G^k_0, G^k_1, ..., G^k_l,
/// where an edge of G^k_i is a path of at most k edges of G^k_{i-1}. Every
/// pending level holds two vertices and a step counter:
/// 2*ceil(log2 n) + ceil(log2 k) units.
inline ReachReport ck_reach(const Digraph& g, Vertex s, Vertex t, std::size_t karity,
                            const CkOptions& opts = {}) {
  if (karity < 2) throw PreconditionError("arity k must be at least 2");
  g.check(s);
  g.check(t);
  detail::Ck run(g, karity, opts);
  std::size_t l = ck_levels(g.vertex_count(), karity);
  try {
    run.report.answer = run.edge(l, s, t);
  } catch (const detail::BudgetExceeded&) {
    run.report.aborted = true;
  }
  run.report.levels = l;
  return run.report;
}

struct DiagOptions {
  std::size_t unit_scale = 16;
  BoundedPathSolver inner = dfs_bounded_path;
  bool memoize = true;
};

/// Tries budgets S = 2, 3, ...; within each, arities 2..S, each run
/// aborted once it exceeds S*unitScale units. The first finished run gives
/// the verdict. Arity 2 finishes once S*unitScale covers its fixed cost.
inline ReachReport diag_reach(const Digraph& g, Vertex s, Vertex t, const DiagOptions& opts = {}) {
  g.check(s);
  g.check(t);
  for (std::size_t budget_s = 2;; ++budget_s) {
    for (std::size_t i = 2; i <= budget_s; ++i) {
      CkOptions ck{opts.inner, budget_s * opts.unit_scale, opts.memoize};
      ReachReport r = ck_reach(g, s, t, i, ck);
      if (!r.aborted) {
        r.budget_used = budget_s * opts.unit_scale;
        r.karity_used = i;
        return r;
      }
    }
  }
}

}  // namespace fomc
