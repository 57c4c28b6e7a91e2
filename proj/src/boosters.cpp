#include <algorithm>
#include <cmath>
#include <map>

#include "regres/hamiltonicity.hpp"

namespace regres {

bool is_booster(const Graph& h, std::span<const Edge> e, std::size_t oracle_limit) {
  if (h.order() > std::min(oracle_limit, kExactLimit)) throw GraphError("is_booster: host too large for exact oracle");
  if (exact_hamiltonian(h)) return false;
  Graph plus = h;
  for (const Edge& x : e) {
    if (x.is_loop()) throw GraphError("is_booster: loop candidate");
    h.check_vertex(x.v);
    plus.add_edge(x.u, x.v);
  }
  return exact_hamiltonian(plus) || exact_longest_path(plus) > exact_longest_path(h);
}

namespace {

std::vector<char> membership(std::size_t n, std::span<const Vertex> s) {
  std::vector<char> in(n, 0);
  for (Vertex x : s) {
    if (x < 0 || static_cast<std::size_t>(x) >= n) throw GraphError("vertex set out of range");
    in[x] = 1;
  }
  return in;
}

Path oriented_from(Path p, Vertex v) {
  if (p.first() != v) p.reverse();
  return p;
}

}  // namespace

std::vector<PairCandidate> find_booster_pairs(const Graph& r, const Graph& gp, std::span<const Vertex> s, Vertex v,
                                              BoosterSearchReport* report, const Path* path, std::size_t limit) {
  const std::size_t n = r.order();
  if (gp.order() != n) throw GraphError("find_booster_pairs: vertex count mismatch");
  r.check_vertex(v);
  BoosterSearchReport rep;
  auto finish = [&](std::vector<PairCandidate> out) {
    if (report) *report = rep;
    return out;
  };

  Path p;
  if (path) {
    if (path->empty() || (path->first() != v && path->last() != v) || !is_path_in(r, *path)) {
      throw GraphError("find_booster_pairs: supplied path is not a path of R ending at v");
    }
    p = oriented_from(*path, v);
  } else if (n <= kExactLimit) {
    if (exact_hamiltonian(r)) {
      rep.terminal = true;
      return finish({});
    }
    p = exact_longest_path_from(r, v);
    if (p.size() != exact_longest_path(r)) {
      throw GraphError("find_booster_pairs: v is not an endpoint of a longest path");
    }
  } else {
    throw GraphError("find_booster_pairs: a longest path must be supplied for n > 20");
  }
  rep.path_length = p.size();
  if (p.size() == n && n >= 3 && r.has_edge(p.first(), p.last())) {
    rep.terminal = true;
    return finish({});
  }
  if (p.size() < 3) return finish({});

  const auto in_s = membership(n, s);
  const RotationState closure = rotation_closure(r, p, v);
  rep.endpoint_count = closure.endpoints().size();
  std::vector<char> in_a(n, 0);
  for (Vertex a : closure.endpoints()) in_a[a] = 1;
  auto in_b = [&](Vertex x) { return x != v && !in_a[x] && !in_s[x]; };
  if (in_s[v]) return finish({});

  struct Raw {
    Vertex a, b, u;
    std::size_t cost;
  };
  std::vector<Raw> raw;
  std::vector<std::int32_t> pos(n, -1);
  std::map<Edge, bool> used_secondary;
  std::vector<char> primary_seen(n, 0);
  for (Vertex a : closure.endpoints()) {
    if (in_s[a]) continue;
    ++rep.usable_endpoints;
    const Path& pa = closure.path_to(a);
    for (std::size_t i = 0; i < pa.size(); ++i) pos[pa.vertices[i]] = static_cast<std::int32_t>(i);
    for (Vertex b : gp.neighbors(a)) {
      if (r.has_edge(a, b) || !in_b(b) || pos[b] < 0) continue;
      const Vertex u = pa.vertices[static_cast<std::size_t>(pos[b]) + 1];
      if (!in_b(u) || !gp.has_edge(u, v) || r.has_edge(u, v)) continue;
      if (!used_secondary.emplace(Edge(a, b), true).second) continue;
      raw.push_back({a, b, u, std::max(r.degree(a), r.degree(b))});
      if (!primary_seen[u]) {
        primary_seen[u] = 1;
        ++rep.primaries;
      }
    }
    for (Vertex x : pa.vertices) pos[x] = -1;
  }
  rep.secondaries = raw.size();
  std::stable_sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) { return x.cost < y.cost; });
  if (limit && raw.size() > limit) raw.resize(limit);

  std::vector<PairCandidate> out;
  out.reserve(raw.size());
  for (const Raw& c : raw) {
    const Path& pa = closure.path_to(c.a);
    const auto ib = static_cast<std::size_t>(std::find(pa.vertices.begin(), pa.vertices.end(), c.b) - pa.vertices.begin());
    PairCandidate pc;
    pc.v = v;
    pc.u = c.u;
    pc.a = c.a;
    pc.b = c.b;
    pc.booster.kind = BoosterKind::Pair;
    pc.booster.edges = {Edge(c.u, v), Edge(c.a, c.b)};
    pc.cycle.assign(pa.vertices.begin(), pa.vertices.begin() + static_cast<std::ptrdiff_t>(ib) + 1);
    pc.cycle.insert(pc.cycle.end(), pa.vertices.rbegin(), pa.vertices.rend() - static_cast<std::ptrdiff_t>(ib) - 1);
    out.push_back(std::move(pc));
  }
  return finish(std::move(out));
}

namespace {

/// Turns a cycle on fewer than n vertices of a connected graph into a path
/// one vertex longer; returns false when no outside neighbor exists.
bool open_cycle(const Graph& r, const VertexSet& c, Path& out) {
  std::vector<char> on(r.order(), 0);
  for (Vertex x : c) on[x] = 1;
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (Vertex w : r.neighbors(c[j])) {
      if (on[w]) continue;
      out.vertices = {w};
      for (std::size_t t = 0; t < c.size(); ++t) out.vertices.push_back(c[(j + t) % c.size()]);
      return true;
    }
  }
  return false;
}

struct SingleChoice {
  Edge edge;
  Path next;          // longer path, or
  VertexSet cycle;    // cycle on V(P)
};

/// Single-edge fallback: from a rotation endpoint a outside S, an edge of
/// gp \ R either to a vertex off P (extension) or back to v (closure).
std::optional<SingleChoice> find_single(const Graph& r, const Graph& gp, const std::vector<char>& in_s,
                                        const RotationState& closure) {
  const Vertex v = closure.fixed_endpoint();
  if (in_s[v]) return std::nullopt;
  const Path& p0 = closure.path_to(closure.endpoints().front());
  std::vector<char> on(r.order(), 0);
  for (Vertex x : p0.vertices) on[x] = 1;
  for (Vertex a : closure.endpoints()) {
    if (in_s[a]) continue;
    const Path& pa = closure.path_to(a);
    for (Vertex b : gp.neighbors(a)) {
      if (r.has_edge(a, b) || in_s[b]) continue;
      if (!on[b]) {
        SingleChoice c{Edge(a, b), pa, {}};
        c.next.vertices.push_back(b);
        return c;
      }
      if (b == v && pa.size() >= 3) return SingleChoice{Edge(a, b), {}, pa.vertices};
    }
  }
  return std::nullopt;
}

/// Small hosts: swap a maximal path for a longest one so each booster
/// lengthens the true longest path.
Path longest_if_small(const Graph& r, Path p) {
  if (r.order() > kExactLimit) return p;
  const std::size_t best = exact_longest_path(r);
  if (p.size() == best) return p;
  for (std::size_t v = 0; v < r.order(); ++v) {
    Path q = exact_longest_path_from(r, static_cast<Vertex>(v));
    if (q.size() == best) return q;
  }
  return p;
}

bool past(const Deadline& deadline) { return deadline && std::chrono::steady_clock::now() >= *deadline; }

}  // namespace

BoosterOutcome booster_iteration(const Graph& gp, double delta, std::size_t d, Rng& rng, const BoosterOptions& opts) {
  BoosterOutcome out;
  const std::size_t n = gp.order();
  auto build = build_sparse_expander(gp, delta, d, opts.expansion, opts.expander_attempts, rng);
  out.expander_stats = build.stats;
  if (!build.ok) {
    out.failure = "expander";
    return out;
  }
  Graph r = std::move(build.r);
  out.r0 = r;
  const double cap = 2.0 * delta * static_cast<double>(d);
  const double saturation = cap - 1.0;

  auto done = [&](VertexSet cycle) {
    out.success = verify_hamilton_cycle(r, cycle) && verify_hamilton_cycle(gp, cycle);
    if (!out.success) out.failure = "certificate";
    out.cycle = std::move(cycle);
    out.r_final = r;
    return out;
  };

  auto grown = grow_path(r, Path{{static_cast<Vertex>(rng.below(n))}}, opts.grow_budget, opts.deadline, &rng);
  if (grown.hamilton_cycle) return done(std::move(*grown.hamilton_cycle));
  Path p = longest_if_small(r, std::move(grown.path));

  for (std::size_t iter = 1; iter <= n; ++iter) {
    if (grown.timed_out || past(opts.deadline)) {
      out.failure = "timeout";
      out.r_final = r;
      return out;
    }
    out.iterations = iter;
    VertexSet s;
    for (std::size_t x = 0; x < n; ++x) {
      if (static_cast<double>(r.degree(static_cast<Vertex>(x))) >= saturation) s.push_back(static_cast<Vertex>(x));
    }
    std::vector<char> in_s(n, 0);
    for (Vertex x : s) in_s[x] = 1;

    // Primary endpoint candidates: both ends of P and further rotation endpoints.
    std::vector<Path> starts{oriented_from(p, p.first()), oriented_from(p, p.last())};
    {
      const auto cl = rotation_closure(r, p, p.first(), opts.primary_candidates);
      for (Vertex a : cl.endpoints()) {
        if (starts.size() >= opts.primary_candidates) break;
        if (a == p.last()) continue;
        starts.push_back(oriented_from(cl.path_to(a), a));
      }
    }
    std::optional<PairCandidate> best;
    std::size_t best_a = 0;
    for (const Path& sp : starts) {
      BoosterSearchReport rep;
      auto pairs = find_booster_pairs(r, gp, s, sp.first(), &rep, &sp, 1);
      if (!pairs.empty() && (!best || rep.endpoint_count > best_a)) {
        best = std::move(pairs.front());
        best_a = rep.endpoint_count;
      }
    }

    IterationRecord rec;
    rec.iteration = iter;
    rec.path_length = p.size();
    rec.saturated = s.size();
    VertexSet cycle;
    if (best) {
      rec.added = best->booster.edges;
      cycle = std::move(best->cycle);
      ++out.pair_boosters;
    } else {
      rec.kind_pair = false;
      std::optional<SingleChoice> single;
      for (const Path& sp : starts) {
        single = find_single(r, gp, in_s, rotation_closure(r, sp, sp.first()));
        if (single) break;
      }
      if (!single) {
        out.failure = "no_booster";
        out.r_final = r;
        return out;
      }
      rec.added = {single->edge};
      cycle = std::move(single->cycle);
      if (cycle.empty()) p = std::move(single->next);
    }

    for (const Edge& e : rec.added) {
      r.add_edge(e.u, e.v);
      if (in_s[e.u] || in_s[e.v]) rec.saturated_violation = true;
    }
    for (const Edge& e : rec.added) {
      for (Vertex x : {e.u, e.v}) {
        if (static_cast<double>(r.degree(x)) > cap) rec.degree_violation = true;
      }
    }
    rec.max_degree = r.max_degree();
    if (static_cast<double>(rec.max_degree) > cap) rec.degree_violation = true;
    out.degree_violations += rec.degree_violation;
    out.saturated_violations += rec.saturated_violation;
    out.boosters_added += 1;
    out.log.push_back(rec);

    if (!cycle.empty()) {
      if (cycle.size() == n) return done(std::move(cycle));
      if (!open_cycle(r, cycle, p)) {
        out.failure = "disconnected";
        out.r_final = r;
        return out;
      }
    }
    grown = grow_path(r, std::move(p), opts.grow_budget, opts.deadline, &rng);
    if (grown.hamilton_cycle) return done(std::move(*grown.hamilton_cycle));
    p = longest_if_small(r, std::move(grown.path));
  }
  out.failure = "iterations";
  out.r_final = r;
  return out;
}

}  // namespace regres
