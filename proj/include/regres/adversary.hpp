#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regres/config_model.hpp"
#include "regres/graph.hpp"
#include "regres/rng.hpp"

namespace regres {

/// Bipartition (A, B) of [n] with per-vertex cross degrees in the host.
struct CutPartition {
  std::vector<std::uint8_t> side;  // 0 = A, 1 = B
  VertexSet a, b;
  std::vector<std::size_t> cross_degree;
  std::size_t value = 0;  // number of cut edges

  static CutPartition from_sides(const Graph& g, std::vector<std::uint8_t> side);
  /// Recomputes a, b, cross_degree and value from `side`.
  bool consistent_with(const Graph& g) const;
};

struct UnbalancedBipartite {
  VertexSet a, b;
};

struct AdversaryDeletion {
  Graph h;
  std::size_t bound = 0;  // the degree cap the deletion respects
  std::optional<UnbalancedBipartite> certificate;
};

/// Hill climbing from a uniform random bipartition: moves a vertex while it
/// has more neighbors on its own side than across. On return every vertex has
/// cross degree >= ceil(deg/2).
CutPartition local_max_cut(const Graph& g, Rng& rng);

/// A maximum cut by exhaustive Gray-code search (n <= 24).
CutPartition exact_max_cut(const Graph& g);

/// H = G[A] + G[B]. bound = max_v (d(v) - cross(v)). The certificate is
/// attached iff |A| != |B|.
AdversaryDeletion intra_cut_deletion(const Graph& g, const CutPartition& cut);

/// Re-checks a certificate: H within g, Delta(H) <= bound, g \ H bipartite on
/// the stated parts, parts partition [n] with different sizes.
bool validate_deletion(const Graph& g, const AdversaryDeletion& del);

struct AttackResult {
  bool found = false;
  AdversaryDeletion deletion;
  std::size_t restarts_used = 0;
  std::size_t balanced_cuts = 0;
  std::size_t weak_cuts = 0;  // some vertex with cross degree <= d/2
};

/// Local max cuts over `restarts` random starts until one is unbalanced with
/// every cross degree > d/2 (d = max degree); returns its intra-cut deletion.
AttackResult unbalanced_cut_attack(const Graph& g, std::size_t restarts, Rng& rng);

/// Deletion with Delta(H) <= (1/2 + eps) d leaving an unbalanced bipartite
/// graph: an unbalanced local max cut directly, or a balanced one after moving
/// a vertex x of A with e(x, B) <= (1/2 + eps/2) d to B.
AttackResult maxcut_eps_adversary(const Graph& g, double eps, Rng& rng);

/// Randomized greedy H with d_H(v) <= min(r, d_G(v)); best of three passes.
AdversaryDeletion random_bounded_adversary(const Graph& g, std::size_t r, Rng& rng);

/// Randomized greedy restricted to the given candidate edges.
AdversaryDeletion capped_deletion(const Graph& g, std::span<const Edge> candidates, std::size_t r, Rng& rng);

/// (u, D)-switching configuration with D = floor(d/2) + ell: e_i = u v_i are
/// the cut edges at u, f_i = x_i y_i are independent edges inside A at distance
/// >= 2 from e_i. The switching removes e_i, f_i and adds u y_i, x_i v_i.
struct SwitchingConfigurationPlan {
  Vertex u = -1;
  std::size_t ell = 0;
  std::vector<Edge> e;                          // e_i = {u, v_i}
  std::vector<std::pair<Vertex, Vertex>> f;     // oriented (x_i, y_i)
};

/// Other endpoint v_i of e_i.
Vertex plan_target(const SwitchingConfigurationPlan& p, std::size_t i);

/// Enumerates out-switching plans in lexicographic order of (f_1, ..., f_D),
/// e_i sorted by v_i. Orientation x_i < y_i unless all_orientations.
std::vector<SwitchingConfigurationPlan> enumerate_out_switchings(const Graph& g, const CutPartition& cut, Vertex u,
                                                                 std::size_t ell, std::size_t limit,
                                                                 bool all_orientations = false);

bool plans_independent(const SwitchingConfigurationPlan& p);
bool plans_far_enough(const Graph& g, const SwitchingConfigurationPlan& p);
bool validate_out_switching(const Graph& g, const CutPartition& cut, const SwitchingConfigurationPlan& p);

/// Single switchings removing u v_i, y_i x_i and adding u y_i, v_i x_i.
std::vector<SwitchPlan> as_switches(const SwitchingConfigurationPlan& p);
Graph apply_out_switching(const Graph& g, const SwitchingConfigurationPlan& p);

struct DensityStats {
  std::size_t trials = 0;
  std::size_t min_edges = 0;
  double mean_edges = 0.0;
  double threshold = 0.0;       // n / 100
  std::size_t violations = 0;   // e(A) <= threshold
};

/// e_G(A) over uniform floor(n/2)-sets A.
DensityStats half_set_density_probe(const Graph& g, std::size_t trials, Rng& rng);

}  // namespace regres
