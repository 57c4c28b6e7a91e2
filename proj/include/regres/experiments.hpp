#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "regres/adversary.hpp"
#include "regres/graph.hpp"
#include "regres/rng.hpp"

namespace regres {

enum class ExperimentKind { Uniformity, Resilience, Counterexample, EdgeDistribution };

std::string to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(const std::string& s);

/// Keys accepted in a config file; anything else is an error.
inline constexpr const char* kConfigKeys[] = {"kind",  "n",         "d",         "eps",     "delta",   "trials",
                                              "seed",  "adversary", "budget_ms", "out_csv", "out_json"};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Resilience;
  std::size_t n = 0;
  std::size_t d = 0;
  double eps = 0.2;
  double delta = 0.3;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string adversary = "random";  // resilience: random|maxcut|none; edge-distribution: none|matching
  std::uint64_t budget_ms = 0;       // per-trial wall clock; 0 = unlimited
  std::string out_csv;
  std::string out_json;
  std::size_t workers = 1;           // not a file key
};

/// Parses and validates; `seed` is mandatory.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);
void validate_config(const ExperimentConfig& cfg);

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string outcome;  // success | failure | timeout | error
  std::size_t iterations = 0;
  std::size_t boosters = 0;
  double wall_ms = 0.0;  // kept in memory only, never written
  std::vector<std::pair<std::string, std::string>> fields;
  nlohmann::json certificate;  // null when no certificate applies
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::string> columns;  // CSV columns after index, seed, outcome, iterations, boosters
  std::vector<TrialRecord> trials;
  nlohmann::ordered_json summary;
};

/// Runs fn(0..count-1) on a worker pool; results come back in index order.
std::vector<TrialRecord> run_trials(std::size_t count, std::size_t workers,
                                    const std::function<TrialRecord(std::size_t)>& fn);

/// Seed of trial i: independent stream split from the config seed.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);

/// All labeled d-regular simple graphs on n vertices (n <= 8), sorted by edge list.
std::vector<Graph> enumerate_regular_graphs(std::size_t n, std::size_t d);

ExperimentReport run_uniformity_suite(const ExperimentConfig& cfg);
ExperimentReport run_resilience_experiment(const ExperimentConfig& cfg);
ExperimentReport run_counterexample_experiment(const ExperimentConfig& cfg);
ExperimentReport run_edge_distribution_probe(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// The graph G and deletion H of a resilience trial, regenerated from the
/// trial stream. The trial itself draws these first from the same stream.
struct ResilienceInstance {
  Graph g;
  AdversaryDeletion h;
  Graph host() const { return subtract(g, h.h); }
};
ResilienceInstance resilience_instance(const ExperimentConfig& cfg, Rng& trial_rng);

/// G of a counterexample trial, regenerated the same way.
Graph counterexample_instance(const ExperimentConfig& cfg, Rng& trial_rng);

inline constexpr std::size_t kCounterexampleRestarts = 20;
inline constexpr std::uint64_t kSolverStepBudget = 20'000'000;

void write_csv(std::ostream& out, const ExperimentReport& report);
void write_json(std::ostream& out, const ExperimentReport& report);
/// Writes out_csv and out_json when set; throws std::runtime_error on IO failure.
void write_outputs(const ExperimentReport& report);

/// Re-validates every success certificate of a JSON report against hosts
/// regenerated from cfg. Returns the number of failed checks; `checked`
/// receives the number of certificates examined.
std::size_t verify_experiment(const ExperimentConfig& cfg, const nlohmann::json& report, std::size_t* checked);

}  // namespace regres
