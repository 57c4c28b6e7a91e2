#include <bit>

#include "regres/hamiltonicity.hpp"

namespace regres {

namespace {

void require_small(const Graph& g) {
  if (g.order() > kExactLimit) {
    throw GraphError("exact oracle limited to n <= " + std::to_string(kExactLimit) + ", got " +
                     std::to_string(g.order()));
  }
}

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(g.order(), 0);
  for (std::size_t v = 0; v < g.order(); ++v) {
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) adj[v] |= 1u << w;
  }
  return adj;
}

/// ends[mask]: bitset of vertices e such that some path covering exactly
/// `mask` starts in `starts` and ends at e.
std::vector<std::uint32_t> path_table(const std::vector<std::uint32_t>& adj, std::uint32_t starts) {
  const std::size_t n = adj.size();
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (starts >> v & 1u) ends[std::size_t{1} << v] = 1u << v;
  }
  for (std::uint32_t mask = 1; mask < ends.size(); ++mask) {
    std::uint32_t e = ends[mask];
    while (e) {
      const int x = std::countr_zero(e);
      e &= e - 1;
      std::uint32_t ext = adj[static_cast<std::size_t>(x)] & ~mask;
      while (ext) {
        const int y = std::countr_zero(ext);
        ext &= ext - 1;
        ends[mask | (1u << y)] |= 1u << y;
      }
    }
  }
  return ends;
}

VertexSet reconstruct(const std::vector<std::uint32_t>& adj, const std::vector<std::uint32_t>& ends,
                      std::uint32_t mask, int last) {
  VertexSet rev{last};
  while (std::popcount(mask) > 1) {
    const std::uint32_t prev_mask = mask & ~(1u << last);
    const std::uint32_t cand = ends[prev_mask] & adj[static_cast<std::size_t>(last)];
    last = std::countr_zero(cand);
    mask = prev_mask;
    rev.push_back(last);
  }
  return VertexSet(rev.rbegin(), rev.rend());
}

}  // namespace

std::optional<VertexSet> exact_hamilton_cycle(const Graph& g) {
  require_small(g);
  const std::size_t n = g.order();
  if (n < 3) return std::nullopt;
  const auto adj = adjacency_masks(g);
  const auto ends = path_table(adj, 1u);
  const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << n) - 1);
  const std::uint32_t closing = ends[full] & adj[0];
  if (!closing) return std::nullopt;
  return reconstruct(adj, ends, full, std::countr_zero(closing));
}

bool exact_hamiltonian(const Graph& g) { return exact_hamilton_cycle(g).has_value(); }

std::size_t exact_longest_path(const Graph& g) {
  require_small(g);
  const std::size_t n = g.order();
  if (n == 0) return 0;
  const auto ends = path_table(adjacency_masks(g), static_cast<std::uint32_t>((std::size_t{1} << n) - 1));
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < ends.size(); ++mask) {
    if (ends[mask]) best = std::max(best, static_cast<std::size_t>(std::popcount(mask)));
  }
  return best;
}

Path exact_longest_path_from(const Graph& g, Vertex v) {
  require_small(g);
  g.check_vertex(v);
  const auto adj = adjacency_masks(g);
  const auto ends = path_table(adj, 1u << v);
  std::uint32_t best_mask = 1u << v;
  for (std::uint32_t mask = 1; mask < ends.size(); ++mask) {
    if (ends[mask] && std::popcount(mask) > std::popcount(best_mask)) best_mask = mask;
  }
  return Path{reconstruct(adj, ends, best_mask, std::countr_zero(ends[best_mask]))};
}

}  // namespace regres
