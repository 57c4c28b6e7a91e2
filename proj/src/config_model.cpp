#include "regres/config_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace regres {

PointSet::PointSet(DegreeSequence seq) : seq_(std::move(seq)) {
  first_.reserve(seq_.size() + 1);
  for (std::size_t i = 0; i < seq_.size(); ++i) {
    first_.push_back(owner_.size());
    owner_.insert(owner_.end(), seq_.d[i], static_cast<Vertex>(i));
  }
  first_.push_back(owner_.size());
}

Vertex PointSet::contracted(Point x) const {
  if (x < 0 || static_cast<std::size_t>(x) >= owner_.size()) throw ConfigError("point out of range");
  return owner_[x];
}

Point PointSet::point(Vertex i, std::size_t slot) const {
  if (i < 0 || static_cast<std::size_t>(i) >= seq_.size() || slot >= seq_.d[i]) {
    throw ConfigError("point index out of range");
  }
  return static_cast<Point>(first_[i] + slot);
}

std::vector<Point> Configuration::uncovered() const {
  std::vector<Point> out;
  out.reserve(partner_.size() - 2 * pairings_.size());
  for (std::size_t x = 0; x < partner_.size(); ++x) {
    if (partner_[x] < 0) out.push_back(static_cast<Point>(x));
  }
  return out;
}

void Configuration::add(Point a, Point b) {
  if (a == b) throw ConfigError("a pairing needs two distinct points");
  if (covered(a) || covered(b)) throw ConfigError("point already covered");
  partner_[a] = b;
  partner_[b] = a;
  pairings_.push_back({a, b});
}

void Configuration::remove_at(std::size_t k) {
  const Pairing p = pairings_.at(k);
  partner_[p.a] = -1;
  partner_[p.b] = -1;
  pairings_.erase(pairings_.begin() + static_cast<std::ptrdiff_t>(k));
}

Fraction::Fraction(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

namespace {

/// Uncovered-point pool supporting O(1) uniform draws and removals.
class PointPool {
 public:
  explicit PointPool(std::size_t m) : items_(m), pos_(m) {
    for (std::size_t i = 0; i < m; ++i) {
      items_[i] = static_cast<Point>(i);
      pos_[i] = i;
    }
  }
  std::size_t size() const { return items_.size(); }
  void remove(Point x) {
    const std::size_t k = pos_[x];
    const Point last = items_.back();
    items_[k] = last;
    pos_[last] = k;
    items_.pop_back();
  }
  Point draw(Rng& rng) const { return items_[rng.below(items_.size())]; }

 private:
  std::vector<Point> items_;
  std::vector<std::size_t> pos_;
};

void require_even(std::size_t total) {
  if (total % 2 != 0) throw ConfigError("odd total degree " + std::to_string(total));
}

}  // namespace

Configuration sample_configuration_sequential(const PointSet& ps, Rng& rng) {
  require_even(ps.point_count());
  const std::size_t m = ps.point_count();
  Configuration cfg(m);
  PointPool pool(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto x = static_cast<Point>(i);
    if (cfg.covered(x)) continue;
    pool.remove(x);
    const Point y = pool.draw(rng);
    pool.remove(y);
    cfg.add(x, y);
  }
  return cfg;
}

Configuration algorithm_a_step(const Configuration& m, Rng& rng) {
  const auto free = m.uncovered();
  if (free.size() < 2) throw ConfigError("Algorithm A needs at least two uncovered points");
  const auto k = free.size();
  const auto i = rng.below(k);
  auto j = rng.below(k - 1);
  if (j >= i) ++j;
  Configuration out = m;
  out.add(free[i], free[j]);
  return out;
}

bool sigma_consistent(const Configuration& m, std::span<const Point> sigma) {
  const std::size_t n = m.point_count();
  if (sigma.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (Point x : sigma) {
    if (x < 0 || static_cast<std::size_t>(x) >= n || seen[x]) return false;
    seen[x] = 1;
  }
  const std::size_t prefix = 2 * m.size();
  for (std::size_t k = 0; k < n; ++k) {
    if ((k < prefix) != m.covered(sigma[k])) return false;
  }
  return true;
}

std::vector<Point> default_sigma(const Configuration& m) {
  std::vector<Point> sigma;
  sigma.reserve(m.point_count());
  for (const Pairing& p : m.pairings()) {
    sigma.push_back(p.a);
    sigma.push_back(p.b);
  }
  for (Point x : m.uncovered()) sigma.push_back(x);
  return sigma;
}

namespace {

void require_b_input(const Configuration& m, std::span<const Point> sigma) {
  if (!sigma_consistent(m, sigma)) throw ConfigError("sigma is inconsistent with the configuration");
  if (m.complete()) throw ConfigError("configuration already complete");
}

/// Type B outcome: drop pairing k, splice the two sigma points in with the
/// given orientation of the dropped pairing.
Configuration type_b_outcome(const Configuration& m, Point x1, Point x2, std::size_t k, bool flip) {
  Pairing z = m.pairings()[k];
  if (flip) std::swap(z.a, z.b);
  Configuration out = m;
  out.remove_at(k);
  out.add(x1, z.a);
  out.add(x2, z.b);
  return out;
}

}  // namespace

Configuration algorithm_b_step(const Configuration& m, std::span<const Point> sigma, Rng& rng) {
  require_b_input(m, sigma);
  const std::size_t i = m.size() + 1;
  const Point x1 = sigma[2 * i - 2];
  const Point x2 = sigma[2 * i - 1];
  // Type A with probability 1/(2i-1).
  if (rng.below(2 * i - 1) == 0) {
    Configuration out = m;
    out.add(x1, x2);
    return out;
  }
  const auto k = static_cast<std::size_t>(rng.below(m.size()));
  const bool flip = rng.below(2) == 1;
  return type_b_outcome(m, x1, x2, k, flip);
}

std::vector<std::pair<Configuration, Fraction>> algorithm_b_law(const Configuration& m,
                                                                std::span<const Point> sigma) {
  require_b_input(m, sigma);
  const auto i = static_cast<std::int64_t>(m.size() + 1);
  const Point x1 = sigma[2 * i - 2];
  const Point x2 = sigma[2 * i - 1];
  std::map<Configuration, Fraction> law;
  auto accumulate = [&](Configuration c, Fraction p) {
    auto [it, inserted] = law.emplace(std::move(c), p);
    if (!inserted) it->second = it->second + p;
  };

  const Fraction type_a(1, 2 * i - 1);
  {
    Configuration out = m;
    out.add(x1, x2);
    accumulate(std::move(out), type_a);
  }
  if (i > 1) {
    const Fraction type_b(2 * i - 2, 2 * i - 1);
    const Fraction per_pairing(1, i - 1);
    const Fraction per_orientation(1, 2);
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (bool flip : {false, true}) {
        accumulate(type_b_outcome(m, x1, x2, k, flip), type_b * per_pairing * per_orientation);
      }
    }
  }
  return {law.begin(), law.end()};
}

Configuration hybrid_sample_configuration(const PointSet& ps, double switch_fraction, Rng& rng) {
  if (!(switch_fraction >= 0.0 && switch_fraction <= 1.0)) {
    throw ConfigError("switch fraction must lie in [0,1]");
  }
  require_even(ps.point_count());
  const std::size_t steps = ps.point_count() / 2;
  const auto a_steps = static_cast<std::size_t>(std::llround(switch_fraction * static_cast<double>(steps)));

  // Algorithm A, with an O(1) pool instead of rescanning for uncovered points.
  Configuration cfg(ps.point_count());
  PointPool pool(ps.point_count());
  for (std::size_t s = 0; s < a_steps; ++s) {
    const Point x = pool.draw(rng);
    pool.remove(x);
    const Point y = pool.draw(rng);
    pool.remove(y);
    cfg.add(x, y);
  }
  const auto sigma = default_sigma(cfg);
  for (std::size_t s = a_steps; s < steps; ++s) cfg = algorithm_b_step(cfg, sigma, rng);
  return cfg;
}

std::vector<Configuration> enumerate_algorithm_a_outcomes(std::size_t point_count) {
  require_even(point_count);
  std::set<Configuration> done;
  std::set<Configuration> frontier{Configuration(point_count)};
  for (std::size_t step = 0; step < point_count / 2; ++step) {
    std::set<Configuration> next;
    for (const Configuration& m : frontier) {
      const auto free = m.uncovered();
      for (std::size_t a = 0; a < free.size(); ++a) {
        for (std::size_t b = a + 1; b < free.size(); ++b) {
          Configuration c = m;
          c.add(free[a], free[b]);
          next.insert(std::move(c));
        }
      }
    }
    frontier = std::move(next);
  }
  // Pairing order is irrelevant to identity; the set is keyed by partners.
  return {frontier.begin(), frontier.end()};
}

MultiGraph project(const PointSet& ps, const Configuration& m) {
  if (m.point_count() != ps.point_count()) throw ConfigError("configuration does not match point set");
  if (!m.complete()) throw ConfigError("cannot project an incomplete configuration");
  MultiGraph g(ps.vertex_count());
  for (const Pairing& p : m.pairings()) g.add_edge(ps.contracted(p.a), ps.contracted(p.b));
  return g;
}

bool is_simple(const MultiGraph& g) {
  if (g.loop_count() > 0) return false;
  auto edges = g.edges();
  std::sort(edges.begin(), edges.end());
  return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

namespace {

DegreeSequence residual_sequence(const Graph& r, std::size_t d) {
  std::vector<std::size_t> res(r.order());
  for (std::size_t v = 0; v < r.order(); ++v) {
    const std::size_t dr = r.degree(static_cast<Vertex>(v));
    if (dr > d) {
      throw ConfigError("infeasible residual: vertex " + std::to_string(v) + " has R-degree " +
                        std::to_string(dr) + " > " + std::to_string(d));
    }
    res[v] = d - dr;
  }
  DegreeSequence seq(std::move(res));
  require_even(seq.total());
  return seq;
}

/// One run of the sequential pairing process that stops as soon as R + F is
/// certain to be non-simple. Accepted runs have exactly the law of a full run
/// conditioned on simplicity, since the drawn prefix is identical.
bool try_sequential_simple(const PointSet& ps, const Graph& r, Rng& rng, Graph& out) {
  const std::size_t m = ps.point_count();
  std::vector<Point> partner(m, -1);
  PointPool pool(m);
  out = r;
  for (std::size_t i = 0; i < m; ++i) {
    const auto x = static_cast<Point>(i);
    if (partner[x] >= 0) continue;
    pool.remove(x);
    const Point y = pool.draw(rng);
    pool.remove(y);
    partner[x] = y;
    partner[y] = x;
    const Vertex a = ps.contracted(x);
    const Vertex b = ps.contracted(y);
    if (a == b || !out.add_edge(a, b)) return false;
  }
  return true;
}

bool try_hybrid_simple(const PointSet& ps, const Graph& r, Rng& rng, double fraction, Graph& out) {
  const auto cfg = hybrid_sample_configuration(ps, fraction, rng);
  out = r;
  for (const Pairing& p : cfg.pairings()) {
    const Vertex a = ps.contracted(p.a);
    const Vertex b = ps.contracted(p.b);
    if (a == b || !out.add_edge(a, b)) return false;
  }
  return true;
}

}  // namespace

RejectionSample sample_simple_with_remainder(const Graph& r, std::size_t d, Rng& rng,
                                             std::uint64_t max_rejects, ConfigSampler method,
                                             double switch_fraction) {
  const PointSet ps(residual_sequence(r, d));
  RejectionSample result;
  for (;;) {
    const bool ok = method == ConfigSampler::Sequential
                        ? try_sequential_simple(ps, r, rng, result.graph)
                        : try_hybrid_simple(ps, r, rng, switch_fraction, result.graph);
    if (ok) return result;
    if (++result.rejections >= max_rejects) {
      throw SamplingExhausted(result.rejections, "rejection sampling exhausted after " +
                                                     std::to_string(result.rejections) + " rejections");
    }
  }
}

namespace {
void check_plan_vertices(std::size_t n, const SwitchPlan& p) {
  for (Vertex x : {p.u1, p.u2, p.v1, p.v2}) {
    if (x < 0 || static_cast<std::size_t>(x) >= n) throw ConfigError("switch vertex out of range");
  }
}
}  // namespace

Graph apply_switch(const Graph& g, const SwitchPlan& plan) {
  check_plan_vertices(g.order(), plan);
  if (Edge(plan.u1, plan.u2) == Edge(plan.v1, plan.v2)) throw ConfigError("removed edges must differ");
  Graph out = g;
  if (!out.remove_edge(plan.u1, plan.u2) || !out.remove_edge(plan.v1, plan.v2)) {
    throw ConfigError("switch removes an absent edge");
  }
  if (plan.u1 == plan.v1 || plan.u2 == plan.v2) throw ConfigError("switch would create a loop");
  if (!out.add_edge(plan.u1, plan.v1) || !out.add_edge(plan.u2, plan.v2)) {
    throw ConfigError("switch would create a parallel edge");
  }
  return out;
}

MultiGraph apply_switch(const MultiGraph& g, const SwitchPlan& plan) {
  check_plan_vertices(g.order(), plan);
  auto edges = g.edges();
  for (const Edge target : {Edge(plan.u1, plan.u2), Edge(plan.v1, plan.v2)}) {
    const auto it = std::find(edges.begin(), edges.end(), target);
    if (it == edges.end()) throw ConfigError("switch removes an absent edge");
    edges.erase(it);
  }
  MultiGraph out(g.order());
  for (const Edge& e : edges) out.add_edge(e.u, e.v);
  out.add_edge(plan.u1, plan.v1);
  out.add_edge(plan.u2, plan.v2);
  return out;
}

}  // namespace regres
