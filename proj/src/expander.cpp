#include "regres/expander.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace regres {

std::size_t max_test_size(std::size_t n, const ExpansionParams& p) {
  return static_cast<std::size_t>(std::floor(p.fraction * static_cast<double>(n) + 1e-9));
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::CertifiedExact: return "certified_exact";
    case VerdictStatus::NoCounterexampleFound: return "no_counterexample_found";
    case VerdictStatus::Counterexample: return "counterexample";
  }
  return "?";
}

namespace {

void validate(const ExpansionParams& p) {
  if (!(p.ratio > 0.0)) throw std::invalid_argument("expansion ratio must be positive");
  if (!(p.fraction > 0.0 && p.fraction <= 1.0)) throw std::invalid_argument("fraction must lie in (0,1]");
}

/// Vertices whose degree is below ratio*s; only these can sit in a violating set of size s.
std::vector<Vertex> low_degree_vertices(const Graph& g, double bound) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (static_cast<double>(g.degree(static_cast<Vertex>(v))) < bound) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::uint64_t binom_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  if (r >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(r));
}

/// Incremental |N(S)| under insertions and removals.
class NeighborhoodCounter {
 public:
  explicit NeighborhoodCounter(const Graph& g) : g_(g), hits_(g.order(), 0) {}
  void add(Vertex v) {
    for (Vertex w : g_.neighbors(v)) {
      if (hits_[w]++ == 0) ++size_;
    }
  }
  void remove(Vertex v) {
    for (Vertex w : g_.neighbors(v)) {
      if (--hits_[w] == 0) --size_;
    }
  }
  std::size_t size() const { return size_; }
  std::size_t size_if_added(Vertex v) const {
    std::size_t extra = 0;
    for (Vertex w : g_.neighbors(v)) extra += hits_[w] == 0;
    return size_ + extra;
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> hits_;
  std::size_t size_ = 0;
};

bool violates(std::size_t nsize, std::size_t s, double ratio) {
  return static_cast<double>(nsize) < ratio * static_cast<double>(s);
}

/// Depth-first enumeration of all s-subsets of `pool`; stops at the first violator.
bool search_sets(const std::vector<Vertex>& pool, std::size_t s, double ratio, NeighborhoodCounter& nc,
                 std::vector<Vertex>& chosen, std::size_t start, std::uint64_t& tested) {
  if (chosen.size() == s) {
    ++tested;
    return violates(nc.size(), s, ratio);
  }
  const std::size_t need = s - chosen.size();
  for (std::size_t i = start; i + need <= pool.size(); ++i) {
    chosen.push_back(pool[i]);
    nc.add(pool[i]);
    if (search_sets(pool, s, ratio, nc, chosen, i + 1, tested)) return true;
    nc.remove(pool[i]);
    chosen.pop_back();
  }
  return false;
}

ExpanderVerdict connectivity_verdict(const Graph& g) {
  ExpanderVerdict v;
  int count = 0;
  const auto labels = component_labels(g, &count);
  if (count <= 1) return v;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(count), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  const auto smallest = static_cast<int>(std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
  v.status = VerdictStatus::Counterexample;
  v.connectivity_failure = true;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    if (labels[x] == smallest) v.witness.push_back(static_cast<Vertex>(x));
  }
  return v;
}

}  // namespace

std::uint64_t exact_check_cost(const Graph& g, const ExpansionParams& p) {
  const std::size_t k = max_test_size(g.order(), p);
  std::uint64_t total = 0;
  for (std::size_t s = 1; s <= k; ++s) {
    const auto pool = low_degree_vertices(g, p.ratio * static_cast<double>(s));
    const auto c = binom_saturating(pool.size(), s);
    if (c > std::numeric_limits<std::uint64_t>::max() - total) return std::numeric_limits<std::uint64_t>::max();
    total += c;
  }
  return total;
}

ExpanderVerdict check_three_expander(const Graph& g, const ExpansionParams& params) {
  validate(params);
  if (g.order() == 0) return {};
  ExpanderVerdict verdict = connectivity_verdict(g);
  if (verdict.connectivity_failure) return verdict;

  const std::size_t k = std::min(max_test_size(g.order(), params), g.order());
  NeighborhoodCounter nc(g);
  std::vector<Vertex> chosen;

  if (params.mode == ExpansionMode::Exact) {
    for (std::size_t s = 1; s <= k; ++s) {
      const auto pool = low_degree_vertices(g, params.ratio * static_cast<double>(s));
      if (search_sets(pool, s, params.ratio, nc, chosen, 0, verdict.sets_tested)) {
        verdict.status = VerdictStatus::Counterexample;
        verdict.witness = chosen;
        std::sort(verdict.witness.begin(), verdict.witness.end());
        return verdict;
      }
    }
    verdict.status = VerdictStatus::CertifiedExact;
    return verdict;
  }

  verdict.status = VerdictStatus::NoCounterexampleFound;
  if (k == 0) return verdict;
  for (std::size_t v = 0; v < g.order(); ++v) {
    ++verdict.sets_tested;
    if (violates(g.degree(static_cast<Vertex>(v)), 1, params.ratio)) {
      verdict.status = VerdictStatus::Counterexample;
      verdict.witness = {static_cast<Vertex>(v)};
      return verdict;
    }
  }
  Rng rng(params.seed);
  std::vector<char> in_set(g.order(), 0);
  for (std::uint64_t t = 0; t < params.budget && k >= 2; ++t) {
    chosen.clear();
    const auto seed = static_cast<Vertex>(rng.below(g.order()));
    chosen.push_back(seed);
    in_set[seed] = 1;
    nc.add(seed);
    bool found = false;
    while (chosen.size() < k) {
      // Greedy: the frontier vertex adding the fewest new neighbors.
      Vertex best = -1;
      std::size_t best_size = std::numeric_limits<std::size_t>::max();
      for (Vertex x : chosen) {
        for (Vertex w : g.neighbors(x)) {
          if (in_set[w]) continue;
          const std::size_t sz = nc.size_if_added(w);
          if (sz < best_size) {
            best_size = sz;
            best = w;
          }
        }
      }
      if (best < 0) break;
      chosen.push_back(best);
      in_set[best] = 1;
      nc.add(best);
      ++verdict.sets_tested;
      if (violates(nc.size(), chosen.size(), params.ratio)) {
        found = true;
        break;
      }
    }
    if (found) {
      verdict.status = VerdictStatus::Counterexample;
      verdict.witness = chosen;
      std::sort(verdict.witness.begin(), verdict.witness.end());
      return verdict;
    }
    for (Vertex x : chosen) {
      nc.remove(x);
      in_set[x] = 0;
    }
  }
  return verdict;
}

bool witness_violates(const Graph& g, std::span<const Vertex> s, const ExpansionParams& params) {
  if (s.empty() || s.size() > max_test_size(g.order(), params)) return false;
  return violates(neighborhood(g, s).size(), s.size(), params.ratio);
}

ThinResult thin_random_subgraph(const Graph& gp, double delta_hat, std::size_t d, Rng& rng) {
  const double keep = 4.0 * delta_hat;
  if (!(keep > 0.0 && keep <= 1.0)) throw std::invalid_argument("keep probability 4*delta_hat must lie in (0,1]");
  ThinResult out;
  out.r = Graph(gp.order());
  for (const Edge& e : gp.edges()) {
    if (rng.bernoulli(keep)) out.r.add_edge(e.u, e.v);
  }
  const double lo = delta_hat * static_cast<double>(d);
  const double hi = 8.0 * delta_hat * static_cast<double>(d);
  for (std::size_t v = 0; v < gp.order(); ++v) {
    const auto deg = static_cast<double>(out.r.degree(static_cast<Vertex>(v)));
    if (!(deg > lo && deg < hi)) out.violators.push_back(static_cast<Vertex>(v));
  }
  out.ok = out.violators.empty();
  return out;
}

RepairResult repair_degree_window(const Graph& gp, const Graph& r, std::size_t min_degree,
                                  std::size_t max_degree) {
  RepairResult out;
  out.r = r;
  Graph& g = out.r;
  const std::size_t n = g.order();

  for (std::size_t v = 0; v < n; ++v) {
    const auto x = static_cast<Vertex>(v);
    while (g.degree(x) > max_degree) {
      const auto nb = g.neighbors(x);
      const Vertex drop = *std::max_element(nb.begin(), nb.end(), [&](Vertex a, Vertex b) {
        return g.degree(a) < g.degree(b);
      });
      g.remove_edge(x, drop);
      ++out.removed;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto x = static_cast<Vertex>(v);
    while (g.degree(x) < min_degree) {
      Vertex best = -1;
      for (Vertex w : gp.neighbors(x)) {
        if (g.has_edge(x, w) || g.degree(w) >= max_degree) continue;
        if (best < 0 || g.degree(w) < g.degree(best)) best = w;
      }
      if (best < 0) break;
      g.add_edge(x, best);
      ++out.added;
    }
  }
  out.ok = true;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t deg = g.degree(static_cast<Vertex>(v));
    if (deg < min_degree || deg > max_degree) out.ok = false;
  }
  return out;
}

namespace {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};
}  // namespace

PatchResult patch_connectivity(const Graph& gp, const Graph& r, std::size_t max_extra) {
  if (gp.order() != r.order()) throw GraphError("patch_connectivity: vertex count mismatch");
  PatchResult out;
  out.r = r;
  if (!is_connected(gp)) {
    out.status = PatchStatus::HostDisconnected;
    return out;
  }
  int count = 0;
  component_labels(r, &count);
  if (count <= 1) return out;
  if (static_cast<std::size_t>(count - 1) > max_extra) {
    out.status = PatchStatus::BudgetExceeded;
    return out;
  }
  UnionFind uf(r.order());
  for (const Edge& e : r.edges()) uf.unite(e.u, e.v);
  const auto candidates = gp.edges();  // sorted, so ties resolve lexicographically
  for (int joined = 1; joined < count; ++joined) {
    const Edge* best = nullptr;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (const Edge& e : candidates) {
      if (uf.find(e.u) == uf.find(e.v)) continue;
      const std::size_t cost = std::max(out.r.degree(e.u), out.r.degree(e.v));
      if (cost < best_cost) {
        best_cost = cost;
        best = &e;
      }
    }
    out.r.add_edge(best->u, best->v);
    uf.unite(best->u, best->v);
    ++out.added;
  }
  return out;
}

namespace {
constexpr std::uint64_t kExactCheckLimit = 200'000'000;
}  // namespace

BuildResult build_sparse_expander(const Graph& gp, double delta, std::size_t d,
                                  const ExpansionParams& params, std::size_t max_attempts, Rng& rng) {
  validate(params);
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  BuildResult out;
  if (!is_connected(gp)) {
    out.failure_stage = "connectivity";
    return out;
  }
  const double dd = static_cast<double>(d);
  const std::size_t n = gp.order();
  const std::size_t k = max_test_size(n, params);
  double delta_hat = delta / 8.0;

  ExpansionParams check = params;

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    ++out.stats.attempts;
    auto thin = thin_random_subgraph(gp, delta_hat, d, rng);

    // Integer form of the open window (lo, hi), tightened by Delta < delta*d.
    const double lo = delta_hat * dd;
    const double hi = std::min(8.0 * delta_hat * dd, delta * dd);
    std::size_t min_deg = static_cast<std::size_t>(std::floor(lo)) + 1;
    if (k >= 1) min_deg = std::max(min_deg, static_cast<std::size_t>(std::ceil(params.ratio)) + 1);
    const auto max_deg = static_cast<std::size_t>(std::ceil(hi)) - 1;

    bool over = false;
    for (Vertex v : thin.violators) over = over || static_cast<double>(thin.r.degree(v)) >= hi;
    Graph r = std::move(thin.r);
    if (!thin.ok || min_deg > static_cast<std::size_t>(std::floor(lo)) + 1) {
      if (!thin.ok) ++out.stats.window_retries;
      auto rep = repair_degree_window(gp, r, min_deg, max_deg);
      if (!rep.ok) {
        ++out.stats.repair_failures;
        if (over) delta_hat = std::max(delta / 16.0, 0.9 * delta_hat);
        continue;
      }
      r = std::move(rep.r);
    }

    auto patch = patch_connectivity(gp, r);
    if (patch.status != PatchStatus::Ok) {
      ++out.stats.patch_failures;
      continue;
    }
    r = std::move(patch.r);
    if (static_cast<double>(r.max_degree()) >= delta * dd) {
      ++out.stats.degree_failures;
      if (over) delta_hat = std::max(delta / 16.0, 0.9 * delta_hat);
      continue;
    }
    check.seed = rng();
    // Sparse R puts most vertices in the low-degree pool; cost it on R itself.
    check.mode = params.mode;
    if (check.mode == ExpansionMode::Exact && exact_check_cost(r, check) > kExactCheckLimit) {
      check.mode = ExpansionMode::Randomized;
    }
    auto verdict = check_three_expander(r, check);
    if (verdict.status == VerdictStatus::Counterexample) {
      ++out.stats.expansion_failures;
      continue;
    }
    out.ok = true;
    out.r = std::move(r);
    out.verdict = std::move(verdict);
    out.stats.final_delta_hat = delta_hat;
    return out;
  }
  out.failure_stage = "attempts";
  out.stats.final_delta_hat = delta_hat;
  return out;
}

}  // namespace regres
