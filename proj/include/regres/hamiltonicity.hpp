#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regres/expander.hpp"
#include "regres/graph.hpp"
#include "regres/rng.hpp"

namespace regres {

/// Ordered vertex path x_0 ... x_k. Orientation runs from first() to last().
struct Path {
  VertexSet vertices;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
  Vertex first() const { return vertices.front(); }
  Vertex last() const { return vertices.back(); }
  void reverse();
  /// Vertex following x, or -1 when x is last or absent.
  Vertex successor(Vertex x) const;
  friend bool operator==(const Path&, const Path&) = default;
};

/// Consecutive vertices adjacent in g, no repeats, all in range.
bool is_path_in(const Graph& g, const Path& p);

/// A cycle given as a vertex sequence (closing edge implicit).
bool is_cycle_in(const Graph& g, std::span<const Vertex> cycle);

/// Spanning cycle of g, re-verified edge by edge.
bool verify_hamilton_cycle(const Graph& g, std::span<const Vertex> cycle);

/// Pósa rotation at the last endpoint with pivot {last, x}: for x = x_i
/// returns x_0..x_i x_k x_{k-1}..x_{i+1}. Requires the pivot edge in g and
/// 0 <= i <= k-2.
Path rotate(const Graph& g, const Path& p, Vertex x);

/// Rotation closure with fixed endpoint v. Breadth first over single
/// rotations; the first path reaching each endpoint is kept.
class RotationState {
 public:
  Vertex fixed_endpoint() const { return fixed_; }
  /// Reachable opposite endpoints in discovery order (includes the start one).
  const VertexSet& endpoints() const { return order_; }
  bool reachable(Vertex a) const;
  /// P_a: path on V(P) from the fixed endpoint to a.
  const Path& path_to(Vertex a) const;
  bool truncated() const { return truncated_; }

 private:
  friend RotationState rotation_closure(const Graph&, const Path&, Vertex, std::size_t);
  Vertex fixed_ = -1;
  VertexSet order_;
  std::vector<std::int32_t> slot_;  // vertex -> index into paths_, or -1
  std::vector<Path> paths_;
  bool truncated_ = false;
};

/// max_endpoints = 0 means unlimited.
RotationState rotation_closure(const Graph& g, const Path& p, Vertex v, std::size_t max_endpoints = 0);

// ---- exact oracles (n <= 20) ----

inline constexpr std::size_t kExactLimit = 20;

bool exact_hamiltonian(const Graph& g);
/// Number of vertices on a longest path (0 for the empty graph).
std::size_t exact_longest_path(const Graph& g);
/// A longest path among those ending at v, oriented so that v is first.
Path exact_longest_path_from(const Graph& g, Vertex v);
/// A Hamilton cycle if one exists.
std::optional<VertexSet> exact_hamilton_cycle(const Graph& g);

// ---- path growth engine ----

struct GrowResult {
  Path path;
  std::optional<VertexSet> hamilton_cycle;
  bool maximal = false;  // no extension or closure found by full rotation closure at both ends
  std::uint64_t steps = 0;
  bool timed_out = false;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// Extends `start` inside g: direct extensions at both ends, then rotation
/// closures looking for an extendable endpoint or a closing edge. A closed
/// cycle on fewer than n vertices is reopened through an outside neighbor.
/// Extensions prefer the outside neighbor with fewest outside neighbors;
/// rng, when given, breaks ties at random.
GrowResult grow_path(const Graph& g, Path start, std::uint64_t step_budget, const Deadline& deadline = {},
                     Rng* rng = nullptr);

// ---- boosters ----

enum class BoosterKind { Single, Pair };

struct Booster {
  BoosterKind kind = BoosterKind::Single;
  std::vector<Edge> edges;  // Pair: {primary uv, secondary ab}
};

/// True iff H+E has a longer path than H or is Hamiltonian. Hamiltonian
/// hosts are terminal: always false. Requires n <= oracle_limit.
bool is_booster(const Graph& h, std::span<const Edge> e, std::size_t oracle_limit = kExactLimit);

struct BoosterSearchReport {
  std::size_t path_length = 0;
  std::size_t endpoint_count = 0;      // |A| before removing S
  std::size_t usable_endpoints = 0;    // |A \ S|
  std::size_t primaries = 0;           // distinct u with at least one secondary
  std::size_t secondaries = 0;
  bool terminal = false;               // host already Hamiltonian
};

/// A booster pair together with the explicit longer structure it creates.
struct PairCandidate {
  Booster booster;
  Vertex v = -1, u = -1, a = -1, b = -1;
  VertexSet cycle;  // P_a[0..b] followed by P_a[a..u] reversed; closed by uv
};

/// Booster pairs {uv, ab} for fixed endpoint v of a longest path of R:
/// a ranges over rotation endpoints outside S, ab is an edge of gp \ R with
/// b outside A, S and {v}, u is the successor of b on P_a, u is outside A
/// and S, and uv is an edge of gp. Adding both edges closes a cycle on V(P).
/// Each secondary edge is reported for one primary only, so the secondary
/// sets of distinct primaries are disjoint. For n <= 20 the path is an exact
/// longest path; otherwise `path` (with v as an endpoint) must be supplied.
/// Results are ordered by the larger R-degree of a and b; `limit` (0 = all)
/// truncates after ordering.
std::vector<PairCandidate> find_booster_pairs(const Graph& r, const Graph& gp, std::span<const Vertex> s,
                                              Vertex v, BoosterSearchReport* report = nullptr,
                                              const Path* path = nullptr, std::size_t limit = 0);

struct IterationRecord {
  std::size_t iteration = 0;
  std::size_t path_length = 0;
  std::size_t saturated = 0;
  std::size_t max_degree = 0;  // Delta(R_i) after the addition
  std::vector<Edge> added;
  bool kind_pair = true;
  bool degree_violation = false;
  bool saturated_violation = false;
};

struct BoosterOptions {
  ExpansionParams expansion{};
  std::size_t expander_attempts = 50;
  std::uint64_t grow_budget = 2'000'000;
  std::size_t primary_candidates = 8;  // endpoints v tried per iteration
  Deadline deadline{};
};

struct BoosterOutcome {
  bool success = false;
  std::string failure;  // "expander", "no_booster", "timeout", "iterations"
  VertexSet cycle;
  Graph r0;
  Graph r_final;
  std::size_t iterations = 0;
  std::size_t boosters_added = 0;
  std::size_t pair_boosters = 0;
  std::size_t degree_violations = 0;
  std::size_t saturated_violations = 0;
  BuildStats expander_stats;
  std::vector<IterationRecord> log;
};

/// Builds R_0 with build_sparse_expander and adds booster edges from gp
/// while avoiding the saturated set {v : d_R(v) >= 2*delta*d - 1}, until
/// R_i carries a certified Hamilton cycle.
BoosterOutcome booster_iteration(const Graph& gp, double delta, std::size_t d, Rng& rng,
                                 const BoosterOptions& opts = {});

struct SolverOutcome {
  bool success = false;
  VertexSet cycle;
  std::uint64_t steps = 0;
  std::size_t restarts = 0;
  std::size_t best_path = 0;
  bool timed_out = false;
};

/// Pósa rotation-extension with random restarts, on g itself.
SolverOutcome rotation_extension_solver(const Graph& g, std::uint64_t budget, Rng& rng,
                                        const Deadline& deadline = {});

}  // namespace regres
