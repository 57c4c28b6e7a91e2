#include <algorithm>
#include <deque>

#include "regres/hamiltonicity.hpp"

namespace regres {

void Path::reverse() { std::reverse(vertices.begin(), vertices.end()); }

Vertex Path::successor(Vertex x) const {
  const auto it = std::find(vertices.begin(), vertices.end(), x);
  if (it == vertices.end() || it + 1 == vertices.end()) return -1;
  return *(it + 1);
}

bool is_path_in(const Graph& g, const Path& p) {
  std::vector<char> seen(g.order(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vertex x = p.vertices[i];
    if (x < 0 || static_cast<std::size_t>(x) >= g.order() || seen[x]) return false;
    seen[x] = 1;
    if (i > 0 && !g.has_edge(p.vertices[i - 1], x)) return false;
  }
  return true;
}

bool is_cycle_in(const Graph& g, std::span<const Vertex> cycle) {
  if (cycle.size() < 3) return false;
  Path p{VertexSet(cycle.begin(), cycle.end())};
  return is_path_in(g, p) && g.has_edge(cycle.front(), cycle.back());
}

bool verify_hamilton_cycle(const Graph& g, std::span<const Vertex> cycle) {
  return cycle.size() == g.order() && is_cycle_in(g, cycle);
}

Path rotate(const Graph& g, const Path& p, Vertex x) {
  if (p.size() < 3) throw GraphError("rotate: path too short");
  const auto it = std::find(p.vertices.begin(), p.vertices.end(), x);
  if (it == p.vertices.end()) throw GraphError("rotate: pivot vertex not on the path");
  const auto i = static_cast<std::size_t>(it - p.vertices.begin());
  const std::size_t k = p.size() - 1;
  if (i + 2 > k) throw GraphError("rotate: pivot must precede the last endpoint's predecessor");
  if (!g.has_edge(p.last(), x)) throw GraphError("rotate: pivot edge not in host");
  Path out = p;
  std::reverse(out.vertices.begin() + static_cast<std::ptrdiff_t>(i) + 1, out.vertices.end());
  return out;
}

namespace {

/// Breadth-first rotation closure with the first vertex fixed. visit(Q) is
/// called once per newly reached endpoint; returning true stops the search.
class ClosureSearch {
 public:
  ClosureSearch(const Graph& g, std::size_t max_endpoints)
      : g_(g), max_(max_endpoints), slot_(g.order(), -1), pos_(g.order(), -1) {}

  template <typename Visit>
  bool run(Path start, Visit&& visit, std::uint64_t* steps = nullptr) {
    slot_[start.last()] = 0;
    paths_.push_back(std::move(start));
    if (visit(paths_.back())) return true;
    for (std::size_t head = 0; head < paths_.size(); ++head) {
      // Copy: paths_ may reallocate while we push.
      const VertexSet q = paths_[head].vertices;
      const std::size_t k = q.size() - 1;
      for (std::size_t i = 0; i <= k; ++i) pos_[q[i]] = static_cast<std::int32_t>(i);
      bool stop = false;
      for (Vertex x : g_.neighbors(q[k])) {
        if (steps) ++*steps;
        const std::int32_t i = pos_[x];
        if (i < 0 || static_cast<std::size_t>(i) + 2 > k) continue;
        const Vertex a = q[static_cast<std::size_t>(i) + 1];
        if (slot_[a] >= 0) continue;
        if (max_ && paths_.size() >= max_) {
          truncated_ = true;
          continue;
        }
        Path next{q};
        std::reverse(next.vertices.begin() + i + 1, next.vertices.end());
        slot_[a] = static_cast<std::int32_t>(paths_.size());
        paths_.push_back(std::move(next));
        if (visit(paths_.back())) {
          stop = true;
          break;
        }
      }
      for (Vertex y : q) pos_[y] = -1;
      if (stop) return true;
    }
    return false;
  }

  std::vector<Path>& paths() { return paths_; }
  std::vector<std::int32_t>& slots() { return slot_; }
  bool truncated() const { return truncated_; }

 private:
  const Graph& g_;
  std::size_t max_;
  std::vector<std::int32_t> slot_;
  std::vector<std::int32_t> pos_;
  std::vector<Path> paths_;
  bool truncated_ = false;
};

}  // namespace

bool RotationState::reachable(Vertex a) const {
  return a >= 0 && static_cast<std::size_t>(a) < slot_.size() && slot_[a] >= 0;
}

const Path& RotationState::path_to(Vertex a) const {
  if (!reachable(a)) throw GraphError("path_to: endpoint not reachable by rotations");
  return paths_[static_cast<std::size_t>(slot_[a])];
}

RotationState rotation_closure(const Graph& g, const Path& p, Vertex v, std::size_t max_endpoints) {
  if (p.empty()) throw GraphError("rotation_closure: empty path");
  Path start = p;
  if (start.first() != v) start.reverse();
  if (start.first() != v) throw GraphError("rotation_closure: v is not an endpoint of P");
  ClosureSearch search(g, max_endpoints);
  RotationState st;
  st.fixed_ = v;
  search.run(std::move(start), [](const Path&) { return false; });
  st.paths_ = std::move(search.paths());
  st.slot_ = std::move(search.slots());
  st.truncated_ = search.truncated();
  for (const Path& q : st.paths_) st.order_.push_back(q.last());
  return st;
}

namespace {

class Grower {
 public:
  Grower(const Graph& g, Path start, Rng* rng) : g_(g), rng_(rng), on_(g.order(), 0) {
    res_.path = std::move(start);
    for (Vertex x : res_.path.vertices) on_[x] = 1;
  }

  std::size_t outside_degree(Vertex w) const {
    std::size_t c = 0;
    for (Vertex y : g_.neighbors(w)) c += !on_[y];
    return c;
  }

  /// Best outside neighbor of x, or -1.
  Vertex pick_outside(Vertex x) {
    Vertex best = -1;
    std::size_t best_deg = 0;
    std::size_t ties = 0;
    for (Vertex w : g_.neighbors(x)) {
      if (on_[w]) continue;
      const std::size_t od = outside_degree(w);
      if (best < 0 || od < best_deg) {
        best = w;
        best_deg = od;
        ties = 1;
      } else if (od == best_deg && rng_ && rng_->below(++ties) == 0) {
        best = w;
      }
    }
    return best;
  }

  void append(Vertex w) {
    res_.path.vertices.push_back(w);
    on_[w] = 1;
  }

  /// Longer path through cycle c and an outside neighbor; false if none.
  bool reopen(const VertexSet& c) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      const Vertex w = pick_outside(c[j]);
      if (w < 0) continue;
      VertexSet next{w};
      for (std::size_t t = 0; t < c.size(); ++t) next.push_back(c[(j + t) % c.size()]);
      res_.path.vertices = std::move(next);
      on_[w] = 1;
      return true;
    }
    return false;
  }

  enum class Step { Progress, Hamiltonian, Stuck };

  /// Rotation closure with the first vertex fixed.
  Step closure_step() {
    const Vertex v = res_.path.first();
    const std::size_t n = g_.order();
    ClosureSearch search(g_, 0);
    Step result = Step::Stuck;
    search.run(
        res_.path,
        [&](const Path& q) {
          const Vertex a = q.last();
          if (pick_outside(a) >= 0) {
            res_.path = q;
            append(pick_outside(a));
            result = Step::Progress;
            return true;
          }
          if (q.size() >= 3 && g_.has_edge(a, v)) {
            if (q.size() == n) {
              res_.hamilton_cycle = q.vertices;
              result = Step::Hamiltonian;
              return true;
            }
            if (reopen(q.vertices)) {
              result = Step::Progress;
              return true;
            }
          }
          return false;
        },
        &res_.steps);
    return result;
  }

  GrowResult run(std::uint64_t budget, const Deadline& deadline) {
    const std::size_t n = g_.order();
    std::uint64_t checks = 0;
    for (;;) {
      if (res_.steps >= budget) return finish(false);
      if (deadline && (++checks & 63) == 0 && std::chrono::steady_clock::now() >= *deadline) {
        res_.timed_out = true;
        return finish(false);
      }
      Vertex w = pick_outside(res_.path.last());
      if (w < 0) {
        res_.path.reverse();
        w = pick_outside(res_.path.last());
      }
      if (w >= 0) {
        append(w);
        ++res_.steps;
        continue;
      }
      if (res_.path.size() == n && n >= 3 && g_.has_edge(res_.path.first(), res_.path.last())) {
        res_.hamilton_cycle = res_.path.vertices;
        return finish(false);
      }
      Step s = closure_step();
      if (s == Step::Stuck) {
        res_.path.reverse();
        s = closure_step();
      }
      if (s == Step::Hamiltonian) return finish(false);
      if (s == Step::Stuck) return finish(true);
    }
  }

 private:
  GrowResult finish(bool maximal) {
    res_.maximal = maximal;
    return std::move(res_);
  }

  const Graph& g_;
  Rng* rng_;
  std::vector<char> on_;
  GrowResult res_;
};

}  // namespace

GrowResult grow_path(const Graph& g, Path start, std::uint64_t step_budget, const Deadline& deadline, Rng* rng) {
  if (g.order() == 0) return {};
  if (start.empty()) start.vertices = {0};
  if (!is_path_in(g, start)) throw GraphError("grow_path: start is not a path in g");
  Grower grower(g, std::move(start), rng);
  return grower.run(step_budget, deadline);
}

SolverOutcome rotation_extension_solver(const Graph& g, std::uint64_t budget, Rng& rng, const Deadline& deadline) {
  SolverOutcome out;
  const std::size_t n = g.order();
  if (n < 3 || !is_connected(g) || g.min_degree() < 2) {
    out.steps = 1;
    return out;
  }
  while (out.steps < budget) {
    const auto start = static_cast<Vertex>(rng.below(n));
    auto res = grow_path(g, Path{{start}}, budget - out.steps, deadline, &rng);
    out.steps += std::max<std::uint64_t>(res.steps, 1);
    out.best_path = std::max(out.best_path, res.path.size());
    if (res.hamilton_cycle && verify_hamilton_cycle(g, *res.hamilton_cycle)) {
      out.success = true;
      out.cycle = std::move(*res.hamilton_cycle);
      return out;
    }
    if (res.timed_out) {
      out.timed_out = true;
      return out;
    }
    ++out.restarts;
  }
  return out;
}

}  // namespace regres
