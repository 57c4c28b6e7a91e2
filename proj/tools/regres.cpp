// Command line front end: sampling, expander extraction, Hamiltonicity,
// attacks, experiment farms and certificate verification.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "regres/adversary.hpp"
#include "regres/experiments.hpp"
#include "regres/hamiltonicity.hpp"
#include "regres/regular_sampler.hpp"

using namespace regres;
using json = nlohmann::ordered_json;

namespace {

json edges_json(const Graph& g) {
  json a = json::array();
  for (const Edge& e : g.edges()) a.push_back({e.u, e.v});
  return a;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return json::parse(f);
}

int cmd_sample(std::size_t n, std::size_t d, std::uint64_t seed, const std::string& contains, const std::string& algo,
               double frac, std::uint64_t max_rejects, const std::string& out) {
  Rng rng(seed);
  SamplerOptions opts;
  opts.kind = parse_sampler_kind(algo);
  opts.switch_fraction = frac;
  opts.max_rejects = max_rejects;
  const Graph r = contains.empty() ? Graph(n) : read_graph_file(contains);
  if (r.order() != n) throw std::invalid_argument("--contains graph has a different vertex count");
  RegularSample s;
  try {
    s = sample_regular_containing(r, d, rng, opts);
  } catch (const SamplingExhausted& e) {
    json side{{"rejections", e.rejections()}, {"accept_rate", 0.0}, {"error", e.what()}};
    if (!out.empty()) write_json_file(out + ".json", side);
    std::cerr << e.what() << '\n';
    return 3;
  }
  if (out.empty()) {
    write_graph(std::cout, s.graph);
  } else {
    write_graph_file(out, s.graph);
    json side{{"rejections", s.rejections},
              {"accept_rate", 1.0 / static_cast<double>(s.rejections + 1)},
              {"sampler", to_string(s.used)},
              {"restarts", s.restarts}};
    write_json_file(out + ".json", side);
  }
  return 0;
}

json verdict_json(const ExpanderVerdict& v) {
  return json{{"status", to_string(v.status)},
              {"sets_tested", v.sets_tested},
              {"connectivity_failure", v.connectivity_failure},
              {"witness", v.witness}};
}

int cmd_expander(const std::string& in, double delta, std::size_t d, const std::string& mode, std::uint64_t budget,
                 std::uint64_t seed, bool check_only, double ratio, double fraction, std::size_t attempts,
                 const std::string& out) {
  const Graph g = read_graph_file(in);
  ExpansionParams p;
  p.ratio = ratio;
  p.fraction = fraction;
  p.budget = budget;
  p.seed = seed;
  if (mode == "exact") {
    p.mode = ExpansionMode::Exact;
  } else if (mode == "randomized") {
    p.mode = ExpansionMode::Randomized;
  } else {
    throw std::invalid_argument("--mode must be exact or randomized");
  }
  if (check_only) {
    std::cout << json{{"verdict", verdict_json(check_three_expander(g, p))}}.dump(2) << '\n';
    return 0;
  }
  if (d == 0) d = g.max_degree();
  if (delta >= 1e-5) std::cerr << "note: delta above the asymptotic regime; results are empirical\n";
  Rng rng(seed);
  const auto res = build_sparse_expander(g, delta, d, p, attempts, rng);
  json j{{"ok", res.ok},
         {"failure_stage", res.failure_stage},
         {"attempts", res.stats.attempts},
         {"window_retries", res.stats.window_retries},
         {"repair_failures", res.stats.repair_failures},
         {"patch_failures", res.stats.patch_failures},
         {"degree_failures", res.stats.degree_failures},
         {"expansion_failures", res.stats.expansion_failures},
         {"final_delta_hat", res.stats.final_delta_hat}};
  if (res.ok) {
    j["verdict"] = verdict_json(res.verdict);
    j["edges"] = res.r.size();
    j["max_degree"] = res.r.max_degree();
    if (!out.empty()) write_graph_file(out, res.r);
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_ham(const std::string& in, const std::string& method, double delta, std::size_t d, std::uint64_t seed,
            std::uint64_t budget, std::uint64_t budget_ms) {
  const Graph g = read_graph_file(in);
  if (d == 0) d = g.max_degree();
  Rng rng(seed);
  Deadline deadline;
  if (budget_ms) deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms);
  json j{{"method", method}};
  if (method == "exact") {
    if (g.order() > kExactLimit) throw std::invalid_argument("exact method needs n <= 20");
    const auto c = exact_hamilton_cycle(g);
    j["hamiltonian"] = c.has_value();
    if (c) j["cycle"] = *c;
    j["longest_path"] = exact_longest_path(g);
  } else if (method == "rotation") {
    const auto res = rotation_extension_solver(g, budget, rng, deadline);
    j["hamiltonian"] = res.success;
    if (res.success) j["cycle"] = res.cycle;
    j["steps"] = res.steps;
    j["restarts"] = res.restarts;
    j["best_path"] = res.best_path;
    j["timed_out"] = res.timed_out;
  } else if (method == "boosters") {
    BoosterOptions opts;
    opts.grow_budget = budget;
    opts.deadline = deadline;
    const auto res = booster_iteration(g, delta, d, rng, opts);
    j["hamiltonian"] = res.success;
    if (res.success) j["cycle"] = res.cycle;
    j["failure"] = res.failure;
    j["iterations"] = res.iterations;
    j["boosters_added"] = res.boosters_added;
    j["pair_boosters"] = res.pair_boosters;
    j["degree_violations"] = res.degree_violations;
    j["saturated_violations"] = res.saturated_violations;
    j["expander_attempts"] = res.expander_stats.attempts;
  } else {
    throw std::invalid_argument("--method must be boosters, rotation or exact");
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_attack(const std::string& in, const std::string& kind, std::size_t r, double eps, std::size_t restarts,
               std::uint64_t seed, const std::string& out) {
  const Graph g = read_graph_file(in);
  Rng rng(seed);
  AttackResult res;
  if (kind == "random") {
    res.found = true;
    res.deletion = random_bounded_adversary(g, r, rng);
  } else if (kind == "maxcut") {
    res = maxcut_eps_adversary(g, eps, rng);
  } else if (kind == "unbalanced") {
    res = unbalanced_cut_attack(g, restarts, rng);
  } else {
    throw std::invalid_argument("--kind must be random, maxcut or unbalanced");
  }
  json j{{"kind", kind}, {"found", res.found}, {"restarts_used", res.restarts_used},
         {"balanced_cuts", res.balanced_cuts}, {"weak_cuts", res.weak_cuts}};
  if (res.found) {
    const auto& del = res.deletion;
    j["bound"] = del.bound;
    j["deleted_edges"] = del.h.size();
    j["max_deleted_degree"] = del.h.max_degree();
    j["deleted"] = edges_json(del.h);
    if (del.certificate) {
      j["certificate"] = json{{"type", "unbalanced_bipartite"}, {"part_a", del.certificate->a}, {"part_b", del.certificate->b}};
    } else {
      j["certificate"] = nullptr;
    }
    j["valid"] = validate_deletion(g, del);
    if (!out.empty()) write_graph_file(out, del.h);
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_experiment(const std::string& config, std::size_t workers) {
  auto cfg = load_experiment_config(config);
  cfg.workers = workers;
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = run_experiment(cfg);
  write_outputs(report);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << to_string(cfg.kind) << ": " << report.trials.size() << " trials in " << secs << " s\n";
  std::cout << report.summary.dump(2) << '\n';
  return 0;
}

VertexSet read_vertex_list(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  VertexSet out;
  std::string tok;
  while (f >> tok) {
    if (tok == "#") {
      std::getline(f, tok);
      continue;
    }
    out.push_back(static_cast<Vertex>(std::stol(tok)));
  }
  return out;
}

int cmd_verify(const std::string& graph, const std::string& cycle, const std::string& certificate,
               const std::string& experiment, const std::string& config) {
  if (!experiment.empty()) {
    if (config.empty()) throw std::invalid_argument("--experiment needs --config");
    const auto cfg = load_experiment_config(config);
    std::size_t checked = 0;
    const auto failures = verify_experiment(cfg, nlohmann::json::parse(read_json_file(experiment).dump()), &checked);
    std::cout << json{{"checked", checked}, {"failures", failures}}.dump(2) << '\n';
    return failures == 0 ? 0 : 1;
  }
  if (graph.empty()) throw std::invalid_argument("--graph is required");
  const Graph g = read_graph_file(graph);
  if (!cycle.empty()) {
    const bool ok = verify_hamilton_cycle(g, read_vertex_list(cycle));
    std::cout << json{{"hamilton_cycle", ok}}.dump(2) << '\n';
    return ok ? 0 : 1;
  }
  if (!certificate.empty()) {
    const auto j = read_json_file(certificate);
    AdversaryDeletion del;
    del.h = Graph(g.order());
    for (const auto& e : j.at("deleted")) del.h.add_edge(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    del.bound = j.at("bound").get<std::size_t>();
    if (j.contains("certificate") && !j.at("certificate").is_null()) {
      const auto& c = j.at("certificate");
      del.certificate = UnbalancedBipartite{c.at("part_a").get<VertexSet>(), c.at("part_b").get<VertexSet>()};
    }
    const bool ok = validate_deletion(g, del);
    std::cout << json{{"deletion_valid", ok}, {"has_certificate", del.certificate.has_value()}}.dump(2) << '\n';
    return ok ? 0 : 1;
  }
  throw std::invalid_argument("nothing to verify: pass --cycle, --certificate or --experiment");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regres: random regular graphs, expanders, boosters and resilience experiments"};
  app.require_subcommand(1);

  std::size_t n = 0, d = 0, r = 0, restarts = 20, attempts = 50, workers = 1;
  std::uint64_t seed = 0, budget = 2'000'000, max_rejects = 1'000'000, budget_ms = 0;
  double frac = 2.0 / 3.0, delta = 0.3, eps = 0.2, ratio = 3.0, fraction = 1.0 / 400.0;
  std::string contains, algo = "auto", out, in, mode = "exact", method = "boosters", kind = "random";
  std::string config, graph, cycle, certificate, experiment;
  bool check_only = false;

  auto* sample = app.add_subcommand("sample", "sample a d-regular graph (optionally containing R)");
  sample->add_option("--n", n, "vertices")->required();
  sample->add_option("--d", d, "degree")->required();
  sample->add_option("--seed", seed);
  sample->add_option("--contains", contains, "edge list R that must be contained");
  sample->add_option("--algo", algo, "seq|hybrid|pairing|auto");
  sample->add_option("--switch-frac", frac, "hybrid: fraction of steps by uniform pairing");
  sample->add_option("--max-rejects", max_rejects);
  sample->add_option("-o,--out", out, "output edge list; a JSON sidecar goes to <out>.json");

  auto* expander = app.add_subcommand("expander", "extract a sparse expander or check expansion");
  expander->add_option("--in", in)->required();
  expander->add_option("--delta", delta);
  expander->add_option("--d", d, "ambient degree (default: max degree)");
  expander->add_option("--mode", mode, "exact|randomized");
  expander->add_option("--budget", budget, "randomized: sets to test");
  expander->add_option("--seed", seed);
  expander->add_option("--ratio", ratio);
  expander->add_option("--fraction", fraction);
  expander->add_option("--attempts", attempts);
  expander->add_flag("--check", check_only, "only check the input graph");
  expander->add_option("-o,--out", out, "write R as an edge list");

  auto* ham = app.add_subcommand("ham", "find a Hamilton cycle");
  ham->add_option("--in", in)->required();
  ham->add_option("--method", method, "boosters|rotation|exact");
  ham->add_option("--delta", delta);
  ham->add_option("--d", d);
  ham->add_option("--seed", seed);
  ham->add_option("--budget", budget, "step budget");
  ham->add_option("--budget-ms", budget_ms, "wall clock budget");

  auto* attack = app.add_subcommand("attack", "bounded-degree deletion adversaries");
  attack->add_option("--in", in)->required();
  attack->add_option("--kind", kind, "random|maxcut|unbalanced");
  attack->add_option("--r", r, "degree cap (random)");
  attack->add_option("--eps", eps, "maxcut");
  attack->add_option("--restarts", restarts, "unbalanced");
  attack->add_option("--seed", seed);
  attack->add_option("-o,--out", out, "write H as an edge list");

  auto* exp = app.add_subcommand("experiment", "run an experiment farm from a config file");
  exp->add_option("--config", config)->required();
  exp->add_option("--workers", workers, "worker threads");

  auto* verify = app.add_subcommand("verify", "re-validate certificates");
  verify->add_option("--graph", graph);
  verify->add_option("--cycle", cycle, "whitespace-separated vertex sequence");
  verify->add_option("--certificate", certificate, "JSON emitted by 'attack'");
  verify->add_option("--experiment", experiment, "JSON report of an experiment");
  verify->add_option("--config", config, "config the report was produced from");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) return cmd_sample(n, d, seed, contains, algo, frac, max_rejects, out);
    if (*expander) return cmd_expander(in, delta, d, mode, budget, seed, check_only, ratio, fraction, attempts, out);
    if (*ham) return cmd_ham(in, method, delta, d, seed, budget, budget_ms);
    if (*attack) return cmd_attack(in, kind, r, eps, restarts, seed, out);
    if (*exp) return cmd_experiment(config, workers);
    if (*verify) return cmd_verify(graph, cycle, certificate, experiment, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
