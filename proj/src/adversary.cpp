#include "regres/adversary.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>

namespace regres {

CutPartition CutPartition::from_sides(const Graph& g, std::vector<std::uint8_t> side) {
  if (side.size() != g.order()) throw GraphError("cut: side vector size mismatch");
  CutPartition c;
  c.side = std::move(side);
  c.cross_degree.assign(g.order(), 0);
  for (std::size_t v = 0; v < g.order(); ++v) {
    (c.side[v] ? c.b : c.a).push_back(static_cast<Vertex>(v));
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) c.cross_degree[v] += c.side[v] != c.side[w];
  }
  c.value = std::accumulate(c.cross_degree.begin(), c.cross_degree.end(), std::size_t{0}) / 2;
  return c;
}

bool CutPartition::consistent_with(const Graph& g) const {
  if (side.size() != g.order()) return false;
  const CutPartition fresh = from_sides(g, side);
  return fresh.a == a && fresh.b == b && fresh.cross_degree == cross_degree && fresh.value == value;
}

CutPartition local_max_cut(const Graph& g, Rng& rng) {
  const std::size_t n = g.order();
  std::vector<std::uint8_t> side(n);
  for (auto& s : side) s = static_cast<std::uint8_t>(rng.below(2));
  std::vector<std::size_t> cross(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) cross[v] += side[v] != side[w];
  }
  std::deque<Vertex> queue;
  std::vector<char> queued(n, 1);
  for (std::size_t v = 0; v < n; ++v) queue.push_back(static_cast<Vertex>(v));
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    const std::size_t deg = g.degree(v);
    if (deg - cross[v] <= cross[v]) continue;
    side[v] ^= 1;
    cross[v] = deg - cross[v];
    for (Vertex w : g.neighbors(v)) {
      if (side[w] == side[v]) {
        --cross[w];
      } else {
        ++cross[w];
      }
      if (!queued[w]) {
        queued[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return CutPartition::from_sides(g, std::move(side));
}

CutPartition exact_max_cut(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 24) throw GraphError("exact_max_cut limited to n <= 24");
  if (n <= 1) return CutPartition::from_sides(g, std::vector<std::uint8_t>(n, 0));
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) adj[v] |= 1u << w;
  }
  // Vertex n-1 stays on side A; Gray code walks the other n-1 sides.
  std::uint32_t in_b = 0;
  long value = 0;
  long best = 0;
  std::uint32_t best_mask = 0;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t k = 1; k < steps; ++k) {
    const int i = std::countr_zero(k);
    const std::uint32_t bit = 1u << i;
    const bool to_b = !(in_b & bit);
    const std::uint32_t same = to_b ? ~in_b : in_b;  // i's side before the flip
    const int same_cnt = std::popcount(adj[static_cast<std::size_t>(i)] & same & ~bit);
    const int other_cnt = std::popcount(adj[static_cast<std::size_t>(i)]) - same_cnt;
    value += same_cnt - other_cnt;
    in_b ^= bit;
    if (value > best) {
      best = value;
      best_mask = in_b;
    }
  }
  std::vector<std::uint8_t> side(n, 0);
  for (std::size_t v = 0; v < n; ++v) side[v] = static_cast<std::uint8_t>(best_mask >> v & 1u);
  return CutPartition::from_sides(g, std::move(side));
}

AdversaryDeletion intra_cut_deletion(const Graph& g, const CutPartition& cut) {
  if (cut.side.size() != g.order()) throw GraphError("intra_cut_deletion: cut does not match graph");
  AdversaryDeletion del;
  del.h = Graph(g.order());
  for (const Edge& e : g.edges()) {
    if (cut.side[e.u] == cut.side[e.v]) del.h.add_edge(e.u, e.v);
  }
  for (std::size_t v = 0; v < g.order(); ++v) {
    del.bound = std::max(del.bound, g.degree(static_cast<Vertex>(v)) - cut.cross_degree[v]);
  }
  if (cut.a.size() != cut.b.size()) del.certificate = UnbalancedBipartite{cut.a, cut.b};
  return del;
}

bool validate_deletion(const Graph& g, const AdversaryDeletion& del) {
  if (del.h.order() != g.order() || !is_subgraph(del.h, g)) return false;
  if (del.h.max_degree() > del.bound) return false;
  if (!del.certificate) return true;
  const auto& cert = *del.certificate;
  if (cert.a.size() == cert.b.size() || cert.a.size() + cert.b.size() != g.order()) return false;
  std::vector<char> seen(g.order(), 0);
  for (const VertexSet* part : {&cert.a, &cert.b}) {
    for (Vertex x : *part) {
      if (x < 0 || static_cast<std::size_t>(x) >= g.order() || seen[x]) return false;
      seen[x] = 1;
    }
  }
  return is_bipartite_with(subtract(g, del.h), cert.a);
}

namespace {

bool all_cross_above_half(const Graph& g, const CutPartition& cut, std::size_t d) {
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (2 * cut.cross_degree[v] <= d) return false;
  }
  return true;
}

CutPartition moved(const Graph& g, const CutPartition& cut, Vertex x) {
  auto side = cut.side;
  side[x] ^= 1;
  return CutPartition::from_sides(g, std::move(side));
}

}  // namespace

AttackResult unbalanced_cut_attack(const Graph& g, std::size_t restarts, Rng& rng) {
  AttackResult res;
  const std::size_t d = g.max_degree();
  for (std::size_t t = 0; t < restarts; ++t) {
    ++res.restarts_used;
    const CutPartition cut = local_max_cut(g, rng);
    if (cut.a.size() == cut.b.size()) {
      ++res.balanced_cuts;
      continue;
    }
    if (!all_cross_above_half(g, cut, d)) {
      ++res.weak_cuts;
      continue;
    }
    res.found = true;
    res.deletion = intra_cut_deletion(g, cut);
    return res;
  }
  return res;
}

AttackResult maxcut_eps_adversary(const Graph& g, double eps, Rng& rng) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  AttackResult res;
  res.restarts_used = 1;
  const double d = static_cast<double>(g.max_degree());
  const double cap = (0.5 + eps) * d;
  const CutPartition cut = local_max_cut(g, rng);
  auto accept = [&](const CutPartition& c) {
    auto del = intra_cut_deletion(g, c);
    if (!del.certificate || static_cast<double>(del.h.max_degree()) > cap) return false;
    res.found = true;
    res.deletion = std::move(del);
    return true;
  };
  if (cut.a.size() != cut.b.size()) {
    if (accept(cut)) return res;
    ++res.weak_cuts;
    return res;
  }
  ++res.balanced_cuts;
  const double move_cap = (0.5 + eps / 2.0) * d;
  for (const VertexSet* part : {&cut.a, &cut.b}) {
    VertexSet order = *part;
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex x, Vertex y) { return cut.cross_degree[x] < cut.cross_degree[y]; });
    for (Vertex x : order) {
      if (static_cast<double>(cut.cross_degree[x]) > move_cap) break;
      if (accept(moved(g, cut, x))) return res;
    }
  }
  return res;
}

AdversaryDeletion capped_deletion(const Graph& g, std::span<const Edge> candidates, std::size_t r, Rng& rng) {
  AdversaryDeletion best;
  best.h = Graph(g.order());
  best.bound = r;
  std::vector<Edge> order(candidates.begin(), candidates.end());
  for (int pass = 0; pass < 3; ++pass) {
    rng.shuffle(std::span<Edge>(order));
    Graph h(g.order());
    for (const Edge& e : order) {
      const std::size_t cap_u = std::min(r, g.degree(e.u));
      const std::size_t cap_v = std::min(r, g.degree(e.v));
      if (h.degree(e.u) < cap_u && h.degree(e.v) < cap_v && g.has_edge(e.u, e.v)) h.add_edge(e.u, e.v);
    }
    if (h.size() > best.h.size()) best.h = std::move(h);
  }
  return best;
}

AdversaryDeletion random_bounded_adversary(const Graph& g, std::size_t r, Rng& rng) {
  const auto edges = g.edges();
  return capped_deletion(g, edges, r, rng);
}

Vertex plan_target(const SwitchingConfigurationPlan& p, std::size_t i) { return p.e.at(i).other(p.u); }

bool plans_independent(const SwitchingConfigurationPlan& p) {
  std::vector<Vertex> ends;
  for (const auto& [x, y] : p.f) {
    ends.push_back(x);
    ends.push_back(y);
  }
  std::sort(ends.begin(), ends.end());
  return std::adjacent_find(ends.begin(), ends.end()) == ends.end();
}

namespace {
bool far_from(const Graph& g, Vertex x, Vertex y, Vertex u, Vertex v) {
  for (Vertex z : {x, y}) {
    if (z == u || z == v || g.has_edge(z, u) || g.has_edge(z, v)) return false;
  }
  return true;
}
}  // namespace

bool plans_far_enough(const Graph& g, const SwitchingConfigurationPlan& p) {
  if (p.e.size() != p.f.size()) return false;
  for (std::size_t i = 0; i < p.e.size(); ++i) {
    if (!far_from(g, p.f[i].first, p.f[i].second, p.u, plan_target(p, i))) return false;
  }
  return true;
}

bool validate_out_switching(const Graph& g, const CutPartition& cut, const SwitchingConfigurationPlan& p) {
  if (p.u < 0 || static_cast<std::size_t>(p.u) >= g.order() || cut.side.size() != g.order()) return false;
  if (cut.side[p.u] != 0) return false;
  const std::size_t d = g.degree(p.u);
  const std::size_t big_d = d / 2 + p.ell;
  if (cut.cross_degree[p.u] != big_d || p.e.size() != big_d || p.f.size() != big_d) return false;
  VertexSet targets;
  for (std::size_t i = 0; i < p.e.size(); ++i) {
    if (!p.e[i].touches(p.u) || !g.has_edge(p.e[i].u, p.e[i].v)) return false;
    const Vertex v = plan_target(p, i);
    if (cut.side[v] != 1) return false;
    targets.push_back(v);
  }
  std::sort(targets.begin(), targets.end());
  if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) return false;
  for (const auto& [x, y] : p.f) {
    if (x == y || !g.has_edge(x, y) || cut.side[x] != 0 || cut.side[y] != 0) return false;
  }
  return plans_independent(p) && plans_far_enough(g, p);
}

std::vector<SwitchingConfigurationPlan> enumerate_out_switchings(const Graph& g, const CutPartition& cut, Vertex u,
                                                                 std::size_t ell, std::size_t limit,
                                                                 bool all_orientations) {
  g.check_vertex(u);
  if (cut.side.size() != g.order()) throw GraphError("enumerate_out_switchings: cut does not match graph");
  if (cut.side[u] != 0) throw GraphError("enumerate_out_switchings: u must lie on side A");
  const std::size_t big_d = g.degree(u) / 2 + ell;
  if (ell == 0 || cut.cross_degree[u] != big_d) {
    throw GraphError("enumerate_out_switchings: cross degree of u is not floor(d/2) + ell");
  }
  SwitchingConfigurationPlan base;
  base.u = u;
  base.ell = ell;
  for (Vertex w : g.neighbors(u)) {
    if (cut.side[w] == 1) base.e.emplace_back(u, w);
  }
  std::vector<Edge> inside;
  for (const Edge& e : g.edges()) {
    if (cut.side[e.u] == 0 && cut.side[e.v] == 0) inside.push_back(e);
  }
  std::vector<std::vector<Edge>> eligible(big_d);
  for (std::size_t i = 0; i < big_d; ++i) {
    const Vertex v = plan_target(base, i);
    for (const Edge& f : inside) {
      if (far_from(g, f.u, f.v, u, v)) eligible[i].push_back(f);
    }
  }

  std::vector<SwitchingConfigurationPlan> out;
  std::vector<Edge> chosen;
  std::vector<char> used(g.order(), 0);
  auto emit = [&]() {
    const std::size_t masks = all_orientations ? (std::size_t{1} << big_d) : 1;
    for (std::size_t m = 0; m < masks && (!limit || out.size() < limit); ++m) {
      SwitchingConfigurationPlan p = base;
      for (std::size_t i = 0; i < big_d; ++i) {
        const bool flip = m >> i & 1u;
        p.f.emplace_back(flip ? chosen[i].v : chosen[i].u, flip ? chosen[i].u : chosen[i].v);
      }
      out.push_back(std::move(p));
    }
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (limit && out.size() >= limit) return;
    if (i == big_d) {
      emit();
      return;
    }
    for (const Edge& f : eligible[i]) {
      if (used[f.u] || used[f.v]) continue;
      used[f.u] = used[f.v] = 1;
      chosen.push_back(f);
      self(self, i + 1);
      chosen.pop_back();
      used[f.u] = used[f.v] = 0;
      if (limit && out.size() >= limit) return;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<SwitchPlan> as_switches(const SwitchingConfigurationPlan& p) {
  std::vector<SwitchPlan> out;
  for (std::size_t i = 0; i < p.e.size(); ++i) {
    const auto [x, y] = p.f.at(i);
    out.push_back(SwitchPlan{p.u, plan_target(p, i), y, x});
  }
  return out;
}

Graph apply_out_switching(const Graph& g, const SwitchingConfigurationPlan& p) {
  Graph out = g;
  for (const SwitchPlan& s : as_switches(p)) out = apply_switch(out, s);
  return out;
}

DensityStats half_set_density_probe(const Graph& g, std::size_t trials, Rng& rng) {
  DensityStats st;
  const std::size_t n = g.order();
  st.trials = trials;
  st.threshold = static_cast<double>(n) / 100.0;
  const std::size_t half = n / 2;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> in(n, 0);
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < half; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(perm[i], perm[j]);
    }
    for (std::size_t i = 0; i < half; ++i) in[perm[i]] = 1;
    std::size_t e = 0;
    for (std::size_t i = 0; i < half; ++i) {
      for (Vertex w : g.neighbors(perm[i])) e += in[w] && w > perm[i];
    }
    for (std::size_t i = 0; i < half; ++i) in[perm[i]] = 0;
    st.min_edges = t == 0 ? e : std::min(st.min_edges, e);
    sum += static_cast<double>(e);
    st.violations += static_cast<double>(e) <= st.threshold;
  }
  st.mean_edges = trials ? sum / static_cast<double>(trials) : 0.0;
  return st;
}

}  // namespace regres
