#pragma once

#include <cstdint>
#include <string>

#include "regres/graph.hpp"
#include "regres/rng.hpp"

namespace regres {

enum class ExpansionMode { Exact, Randomized };

struct ExpansionParams {
  double ratio = 3.0;
  double fraction = 1.0 / 400.0;
  ExpansionMode mode = ExpansionMode::Exact;
  std::uint64_t budget = 20'000;  // randomized mode: sets tested
  std::uint64_t seed = 0;         // randomized mode
};

/// Largest tested set size, floor(fraction * n).
std::size_t max_test_size(std::size_t n, const ExpansionParams& p);

/// Number of subsets an exact check would visit, saturating at UINT64_MAX.
std::uint64_t exact_check_cost(const Graph& g, const ExpansionParams& p);

enum class VerdictStatus { CertifiedExact, NoCounterexampleFound, Counterexample };

std::string to_string(VerdictStatus s);

struct ExpanderVerdict {
  VerdictStatus status = VerdictStatus::CertifiedExact;
  std::uint64_t sets_tested = 0;
  VertexSet witness;              // set S for a counterexample
  bool connectivity_failure = false;  // witness is a whole component
};

/// Connectivity plus |N(S)| >= ratio*|S| for every 1 <= |S| <= floor(fraction*n).
///
/// Exact mode enumerates every set, skipping vertices whose degree alone
/// already guarantees expansion. Randomized mode checks all singletons, then
/// grows `budget` sets greedily from random seeds; it never certifies.
ExpanderVerdict check_three_expander(const Graph& g, const ExpansionParams& params);

/// Recheck of a counterexample using only neighborhood().
bool witness_violates(const Graph& g, std::span<const Vertex> s, const ExpansionParams& params);

struct ThinResult {
  bool ok = false;
  Graph r;              // always filled, even on Retry
  VertexSet violators;  // degree outside (delta_hat*d, 8*delta_hat*d)
};

/// Keeps each edge independently with probability 4*delta_hat, then checks
/// the open degree window (delta_hat*d, 8*delta_hat*d).
ThinResult thin_random_subgraph(const Graph& gp, double delta_hat, std::size_t d, Rng& rng);

struct RepairResult {
  bool ok = false;
  Graph r;
  std::size_t removed = 0;
  std::size_t added = 0;
};

/// Trims vertices of degree > max_degree (dropping edges to the
/// highest-degree neighbors first), then tops up vertices below min_degree
/// with gp-edges to the lowest-degree eligible neighbors.
RepairResult repair_degree_window(const Graph& gp, const Graph& r, std::size_t min_degree,
                                  std::size_t max_degree);

enum class PatchStatus { Ok, HostDisconnected, BudgetExceeded };

struct PatchResult {
  PatchStatus status = PatchStatus::Ok;
  Graph r;
  std::size_t added = 0;
};

/// Joins the components of R with components(R)-1 edges of gp, each time
/// picking the edge that minimizes the larger endpoint degree in R
/// (ties: smallest edge).
PatchResult patch_connectivity(const Graph& gp, const Graph& r, std::size_t max_extra = 400);

struct BuildStats {
  std::size_t attempts = 0;
  std::size_t window_retries = 0;  // thinning outside the window (repaired)
  std::size_t repair_failures = 0;
  std::size_t patch_failures = 0;
  std::size_t degree_failures = 0;
  std::size_t expansion_failures = 0;
  double final_delta_hat = 0.0;
};

struct BuildResult {
  bool ok = false;
  std::string failure_stage;  // "connectivity", "attempts"
  Graph r;
  ExpanderVerdict verdict;
  BuildStats stats;
};

/// Sparse spanning expander R of gp with Delta(R) < delta*d.
///
/// Each attempt: thin with delta_hat (initially delta/8), repair the degree
/// window, patch connectivity, check Delta, check expansion. Attempts that
/// thinned above the window shrink delta_hat by 0.9, floored at delta/16.
/// Exact checking falls back to randomized when too costly.
BuildResult build_sparse_expander(const Graph& gp, double delta, std::size_t d,
                                  const ExpansionParams& params, std::size_t max_attempts, Rng& rng);

}  // namespace regres
