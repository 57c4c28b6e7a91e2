#pragma once

#include <cstdint>
#include <string>

#include "regres/config_model.hpp"

namespace regres {

/// Which generator produces a d-regular graph.
///
/// Sequential and Hybrid are the exact rejection samplers from
/// config_model. PairingRestart pairs random points one at a time, refusing
/// loops and duplicate edges and restarting on dead ends; it is fast for
/// large d but only asymptotically uniform. Auto uses rejection while the
/// expected acceptance rate stays reasonable and PairingRestart otherwise.
enum class SamplerKind { Sequential, Hybrid, PairingRestart, Auto };

SamplerKind parse_sampler_kind(const std::string& name);
std::string to_string(SamplerKind kind);

struct SamplerOptions {
  SamplerKind kind = SamplerKind::Auto;
  std::uint64_t max_rejects = 1'000'000;
  std::uint64_t max_restarts = 10'000;
  double switch_fraction = 2.0 / 3.0;
};

struct RegularSample {
  Graph graph;
  SamplerKind used = SamplerKind::Sequential;
  std::uint64_t rejections = 0;  // rejection samplers
  std::uint64_t restarts = 0;    // pairing sampler
};

/// Heuristic acceptance probability exp(-(d^2-1)/4) of the rejection sampler.
double expected_accept_rate(std::size_t d);

/// The concrete sampler Auto resolves to for residual degree d.
SamplerKind resolve_sampler(SamplerKind kind, std::size_t d);

RegularSample sample_regular(std::size_t n, std::size_t d, Rng& rng, const SamplerOptions& opts = {});

/// A d-regular simple graph containing R.
RegularSample sample_regular_containing(const Graph& r, std::size_t d, Rng& rng,
                                        const SamplerOptions& opts = {});

}  // namespace regres
