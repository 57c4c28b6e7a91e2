#pragma once
// Brute-force reference computations used only by the tests. Written
// independently of the library: plain adjacency matrices, no bitmask DP.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "regres/graph.hpp"

namespace oracle {

using regres::Edge;
using regres::Graph;
using regres::Vertex;

using Matrix = std::vector<std::vector<char>>;

inline Matrix matrix_of(const Graph& g) {
  const auto n = g.order();
  Matrix m(n, std::vector<char>(n, 0));
  for (const Edge& e : g.edges()) m[e.u][e.v] = m[e.v][e.u] = 1;
  return m;
}

/// Every labeled d-regular simple graph on n vertices, as sorted edge lists,
/// by backtracking over the pairs {i,j} in lexicographic order.
inline std::vector<std::vector<Edge>> regular_graphs(std::size_t n, std::size_t d) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(int(i), int(j));
  std::vector<std::vector<Edge>> out;
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == pairs.size()) {
      if (std::all_of(deg.begin(), deg.end(), [&](std::size_t x) { return x == d; })) out.push_back(cur);
      return;
    }
    const auto [i, j] = pairs[k];
    // Past the last pair of row i, vertex i can no longer gain edges.
    const bool row_end = j == int(n) - 1;
    if (deg[i] < d && deg[j] < d) {
      ++deg[i], ++deg[j];
      cur.emplace_back(i, j);
      if (!row_end || deg[i] == d) rec(k + 1);
      cur.pop_back();
      --deg[i], --deg[j];
    }
    if (!row_end || deg[i] == d) rec(k + 1);
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// (2k-1)!! for D = 2k points.
inline std::uint64_t double_factorial_odd(std::size_t points) {
  std::uint64_t r = 1;
  for (std::size_t x = 1; x + 1 <= points; x += 2) r *= x;
  return r;
}

/// Perfect matchings of {0..D-1}, counted by the first-point recursion.
inline std::uint64_t count_matchings(std::size_t points) {
  std::function<std::uint64_t(std::vector<int>)> rec = [&](std::vector<int> left) -> std::uint64_t {
    if (left.empty()) return 1;
    std::uint64_t total = 0;
    for (std::size_t k = 1; k < left.size(); ++k) {
      std::vector<int> rest;
      for (std::size_t t = 1; t < left.size(); ++t)
        if (t != k) rest.push_back(left[t]);
      total += rec(rest);
    }
    return total;
  };
  std::vector<int> all(points);
  for (std::size_t i = 0; i < points; ++i) all[i] = int(i);
  return rec(all);
}

/// Vertex count of a longest path, by plain DFS from every start (n <= 12).
inline std::size_t longest_path(const Graph& g) {
  const auto n = g.order();
  if (n == 0) return 0;
  const auto m = matrix_of(g);
  std::vector<char> used(n, 0);
  std::size_t best = 1;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t len) {
    best = std::max(best, len);
    if (best == n) return;
    for (std::size_t w = 0; w < n; ++w) {
      if (m[v][w] && !used[w]) {
        used[w] = 1;
        dfs(w, len + 1);
        used[w] = 0;
      }
    }
  };
  for (std::size_t s = 0; s < n && best < n; ++s) {
    used[s] = 1;
    dfs(s, 1);
    used[s] = 0;
  }
  return best;
}

/// Spanning cycle search by DFS from vertex 0 (n >= 3).
inline bool hamiltonian(const Graph& g) {
  const auto n = g.order();
  if (n < 3) return false;
  const auto m = matrix_of(g);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t len) {
    if (len == n) return m[v][0] != 0;
    for (std::size_t w = 1; w < n; ++w) {
      if (m[v][w] && !used[w]) {
        used[w] = 1;
        if (dfs(w, len + 1)) return true;
        used[w] = 0;
      }
    }
    return false;
  };
  used[0] = 1;
  return dfs(0, 1);
}

/// Maximum cut value over all 2^(n-1) bipartitions.
inline std::size_t max_cut_value(const Graph& g) {
  const auto n = g.order();
  const auto edges = g.edges();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::size_t cut = 0;
    for (const Edge& e : edges) cut += ((mask >> e.u) & 1) != ((mask >> e.v) & 1);
    best = std::max(best, cut);
  }
  return best;
}

/// Cross degrees of a side assignment, straight from the edge list.
inline std::vector<std::size_t> cross_degrees(const Graph& g, const std::vector<std::uint8_t>& side) {
  std::vector<std::size_t> c(g.order(), 0);
  for (const Edge& e : g.edges()) {
    if (side[e.u] != side[e.v]) ++c[e.u], ++c[e.v];
  }
  return c;
}

/// Degree vector of an edge multiset; loops count twice.
inline std::vector<std::size_t> degrees_of(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::size_t> d(n, 0);
  for (const Edge& e : edges) ++d[e.u], ++d[e.v];
  return d;
}

inline std::map<Edge, int> multiset(const std::vector<Edge>& edges) {
  std::map<Edge, int> m;
  for (const Edge& e : edges) ++m[e];
  return m;
}

}  // namespace oracle
