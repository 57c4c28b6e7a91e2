#include "regres/regular_sampler.hpp"

#include <algorithm>
#include <cmath>

namespace regres {

SamplerKind parse_sampler_kind(const std::string& name) {
  if (name == "seq" || name == "sequential") return SamplerKind::Sequential;
  if (name == "hybrid") return SamplerKind::Hybrid;
  if (name == "pairing") return SamplerKind::PairingRestart;
  if (name == "auto") return SamplerKind::Auto;
  throw std::invalid_argument("unknown sampler '" + name + "' (seq|hybrid|pairing|auto)");
}

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Sequential: return "seq";
    case SamplerKind::Hybrid: return "hybrid";
    case SamplerKind::PairingRestart: return "pairing";
    case SamplerKind::Auto: return "auto";
  }
  return "?";
}

double expected_accept_rate(std::size_t d) {
  const double dd = static_cast<double>(d);
  return std::exp(-(dd * dd - 1.0) / 4.0);
}

SamplerKind resolve_sampler(SamplerKind kind, std::size_t d) {
  if (kind != SamplerKind::Auto) return kind;
  return expected_accept_rate(d) >= 1e-5 ? SamplerKind::Sequential : SamplerKind::PairingRestart;
}

namespace {

/// One pairing pass. Returns false on a dead end (no legal pair left).
bool pairing_pass(const Graph& r, const std::vector<std::size_t>& residual, Rng& rng, Graph& out) {
  out = r;
  std::vector<Vertex> points;
  for (std::size_t v = 0; v < residual.size(); ++v) {
    points.insert(points.end(), residual[v], static_cast<Vertex>(v));
  }
  // Consecutive failed draws before an exhaustive dead-end check.
  constexpr int kPatience = 64;
  while (!points.empty()) {
    int failures = 0;
    bool paired = false;
    while (!paired) {
      const auto i = static_cast<std::size_t>(rng.below(points.size()));
      auto j = static_cast<std::size_t>(rng.below(points.size() - 1));
      if (j >= i) ++j;
      const Vertex a = points[i];
      const Vertex b = points[j];
      if (a != b && !out.has_edge(a, b)) {
        out.add_edge(a, b);
        // Remove the larger index first so the smaller stays valid.
        for (std::size_t k : {std::max(i, j), std::min(i, j)}) {
          points[k] = points.back();
          points.pop_back();
        }
        paired = true;
      } else if (++failures >= kPatience) {
        std::vector<Vertex> live(points);
        std::sort(live.begin(), live.end());
        live.erase(std::unique(live.begin(), live.end()), live.end());
        bool any = false;
        for (std::size_t x = 0; x < live.size() && !any; ++x) {
          for (std::size_t y = x + 1; y < live.size() && !any; ++y) {
            any = !out.has_edge(live[x], live[y]);
          }
        }
        if (!any) return false;
        failures = 0;
      }
    }
  }
  return true;
}

}  // namespace

RegularSample sample_regular_containing(const Graph& r, std::size_t d, Rng& rng, const SamplerOptions& opts) {
  std::vector<std::size_t> residual(r.order());
  std::size_t total = 0;
  std::size_t max_residual = 0;
  for (std::size_t v = 0; v < r.order(); ++v) {
    const std::size_t dr = r.degree(static_cast<Vertex>(v));
    if (dr > d) throw ConfigError("infeasible residual: R-degree exceeds d");
    residual[v] = d - dr;
    total += residual[v];
    max_residual = std::max(max_residual, residual[v]);
  }
  if (total % 2 != 0) throw ConfigError("odd total degree " + std::to_string(total));

  RegularSample out;
  out.used = resolve_sampler(opts.kind, max_residual);
  if (out.used == SamplerKind::PairingRestart) {
    for (;;) {
      if (pairing_pass(r, residual, rng, out.graph)) return out;
      if (++out.restarts >= opts.max_restarts) {
        throw SamplingExhausted(out.restarts, "pairing sampler exhausted after " +
                                                  std::to_string(out.restarts) + " restarts");
      }
    }
  }
  const auto method = out.used == SamplerKind::Hybrid ? ConfigSampler::Hybrid : ConfigSampler::Sequential;
  auto s = sample_simple_with_remainder(r, d, rng, opts.max_rejects, method, opts.switch_fraction);
  out.graph = std::move(s.graph);
  out.rejections = s.rejections;
  return out;
}

RegularSample sample_regular(std::size_t n, std::size_t d, Rng& rng, const SamplerOptions& opts) {
  if (d >= n && n > 0) throw ConfigError("no simple d-regular graph with d >= n");
  return sample_regular_containing(Graph(n), d, rng, opts);
}

}  // namespace regres
