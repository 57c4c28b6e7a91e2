// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every threshold is a named constant below.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "regres/adversary.hpp"
#include "regres/config_model.hpp"
#include "regres/experiments.hpp"
#include "regres/hamiltonicity.hpp"
#include "regres/regular_sampler.hpp"
#include "regres/stats.hpp"

using namespace regres;

namespace {

// C1
constexpr std::size_t kUniformSamples = 100'000;
constexpr double kMinPValue = 0.001;
constexpr double kUniformSecondsPerPair = 120.0;
// C4
constexpr std::size_t kBoosterHosts = 1000;
constexpr std::size_t kBoosterMaxN = 12;
// C5, C6
constexpr std::size_t kResN = 1000, kResD = 20, kResTrials = 100, kResMinSuccess = 95;
constexpr double kResEps = 0.2, kResDelta = 0.3, kResSeconds = 1800.0;
constexpr std::uint64_t kResSeed = 20240601;
constexpr std::size_t kResR = 6;
constexpr std::size_t kStressTrials = 20;
// C7
constexpr std::size_t kCexN = 16, kCexD = 3, kCexTrials = 1000;
constexpr std::uint64_t kCexSeed = 77;
// C8, C9
constexpr std::size_t kCutRuns = 10'000, kSwitchRuns = 10'000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---- C1 ----
Verdict sampler_uniformity() {
  bool pass = true;
  std::string detail;
  Rng root(101);
  for (auto [n, d] : {std::pair<std::size_t, std::size_t>{4, 2}, {6, 3}}) {
    const auto t0 = Clock::now();
    const auto support = oracle::regular_graphs(n, d);
    std::map<std::vector<Edge>, std::size_t> index;
    for (std::size_t i = 0; i < support.size(); ++i) index[support[i]] = i;
    Rng rng = root.split(n);
    std::vector<std::uint64_t> counts(support.size(), 0);
    std::size_t outside = 0;
    for (std::size_t s = 0; s < kUniformSamples; ++s) {
      const auto it = index.find(sample_simple_with_remainder(Graph(n), d, rng).graph.edges());
      if (it == index.end()) {
        ++outside;
      } else {
        ++counts[it->second];
      }
    }
    const auto chi = stats::chi_square_uniform(counts);
    const double secs = seconds_since(t0);
    const bool ok = outside == 0 && chi.p_value > kMinPValue && secs < kUniformSecondsPerPair;
    pass &= ok;
    detail += fmt("(%zu,%zu): support %zu, chi2 %.2f dof %zu p %.4f, %.1fs; ", n, d, support.size(), chi.statistic,
                  chi.dof, chi.p_value, secs);
  }
  return {pass, detail};
}

// ---- C2 ----
std::set<std::vector<Point>> b_reachable(const Configuration& m, std::span<const Point> sigma) {
  const std::size_t i = m.size() + 1;
  const Point s1 = sigma[2 * i - 2], s2 = sigma[2 * i - 1];
  std::set<std::vector<Point>> out;
  auto a = m.key();
  a[s1] = s2;
  a[s2] = s1;
  out.insert(a);
  for (const Pairing& p : m.pairings()) {
    for (int flip = 0; flip < 2; ++flip) {
      const Point z1 = flip ? p.b : p.a, z2 = flip ? p.a : p.b;
      auto b = m.key();
      b[z1] = s1;
      b[s1] = z1;
      b[z2] = s2;
      b[s2] = z2;
      out.insert(b);
    }
  }
  return out;
}

Verdict algorithm_b_law_exact() {
  std::size_t states = 0, bad = 0;
  for (std::size_t points : {2u, 4u, 6u}) {
    std::vector<Point> perm(points);
    std::iota(perm.begin(), perm.end(), 0);
    // All partial matchings with k pairings, built from permutations.
    std::set<std::vector<Point>> seen_m;
    std::vector<Configuration> ms;
    do {
      for (std::size_t k = 0; 2 * k < points; ++k) {
        Configuration m(points);
        for (std::size_t j = 0; j < k; ++j) m.add(perm[2 * j], perm[2 * j + 1]);
        if (seen_m.insert(m.key()).second) ms.push_back(m);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& m : ms) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        if (!sigma_consistent(m, perm)) continue;
        ++states;
        const auto law = algorithm_b_law(m, perm);
        const auto target = b_reachable(m, perm);
        const Fraction each(1, static_cast<std::int64_t>(target.size()));
        bool ok = law.size() == target.size();
        Fraction total(0, 1);
        for (const auto& [cfg, w] : law) {
          ok &= target.count(cfg.key()) == 1 && w == each;
          total = total + w;
        }
        ok &= total == Fraction(1, 1);
        bad += !ok;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return {bad == 0 && states > 0, fmt("%zu (M, sigma) states with D <= 6, %zu mismatches", states, bad)};
}

// ---- C3 ----
Verdict configuration_counts() {
  bool pass = true;
  std::string detail;
  for (std::size_t d : {2u, 4u, 6u, 8u}) {
    const auto outs = enumerate_algorithm_a_outcomes(d);
    std::set<std::vector<Point>> distinct;
    bool complete = true;
    for (const auto& m : outs) {
      distinct.insert(m.key());
      complete &= m.complete();
    }
    const auto expect = oracle::double_factorial_odd(d);
    const bool ok = outs.size() == expect && distinct.size() == expect && complete &&
                    oracle::count_matchings(d) == expect;
    pass &= ok;
    detail += fmt("D=%zu: %zu (expect %llu); ", d, outs.size(), static_cast<unsigned long long>(expect));
  }
  return {pass, detail};
}

// ---- C4 ----
Graph random_graph(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) g.add_edge(Vertex(i), Vertex(j));
  return g;
}

std::size_t dfs_longest_from(const Graph& g, Vertex v) {
  std::vector<char> used(g.order(), 0);
  std::size_t best = 0;
  std::function<void(Vertex, std::size_t)> dfs = [&](Vertex x, std::size_t len) {
    best = std::max(best, len);
    for (Vertex w : g.neighbors(x)) {
      if (used[w]) continue;
      used[w] = 1;
      dfs(w, len + 1);
      used[w] = 0;
    }
  };
  used[v] = 1;
  dfs(v, 1);
  return best;
}

Verdict booster_soundness() {
  Rng rng(404);
  std::size_t hosts = 0, with_pairs = 0, pairs = 0, unsound = 0, lib_disagree = 0, s_touch = 0;
  while (hosts < kBoosterHosts) {
    const std::size_t n = 6 + rng.below(kBoosterMaxN - 5);
    const Graph gp = random_graph(n, 0.4 + 0.4 * rng.uniform01(), rng);
    Graph r(n);
    const double keep = 0.3 + 0.3 * rng.uniform01();
    for (const Edge& e : gp.edges())
      if (rng.bernoulli(keep)) r.add_edge(e.u, e.v);
    // boosters are defined for connected hosts
    if (!is_connected(r) || oracle::hamiltonian(r)) continue;
    const auto best = oracle::longest_path(r);
    Vertex v = -1;
    for (Vertex x = 0; x < Vertex(n) && v < 0; ++x)
      if (dfs_longest_from(r, x) == best) v = x;
    VertexSet s;
    for (Vertex x = 0; x < Vertex(n); ++x)
      if (x != v && rng.bernoulli(0.1)) s.push_back(x);
    ++hosts;
    const auto found = find_booster_pairs(r, gp, s, v);
    with_pairs += !found.empty();
    for (const auto& pc : found) {
      ++pairs;
      Graph r2 = r;
      for (const Edge& e : pc.booster.edges) r2.add_edge(e.u, e.v);
      const bool ok = oracle::hamiltonian(r2) || oracle::longest_path(r2) > best;
      unsound += !ok;
      lib_disagree += is_booster(r, pc.booster.edges) != ok;
      for (const Edge& e : pc.booster.edges)
        for (Vertex x : {e.u, e.v})
          if (x != v && std::find(s.begin(), s.end(), x) != s.end()) ++s_touch;
    }
  }
  const bool pass = unsound == 0 && lib_disagree == 0 && s_touch == 0 && pairs > 0;
  return {pass, fmt("%zu hosts (n <= %zu), %zu with pairs, %zu pairs, %zu unsound, %zu is_booster disagreements, "
                    "%zu endpoints in S",
                    hosts, kBoosterMaxN, with_pairs, pairs, unsound, lib_disagree, s_touch)};
}

// ---- C5 / C6 ----
ExperimentConfig resilience_config() {
  ExperimentConfig c;
  c.kind = ExperimentKind::Resilience;
  c.n = kResN;
  c.d = kResD;
  c.eps = kResEps;
  c.delta = kResDelta;
  c.trials = kResTrials;
  c.seed = kResSeed;
  c.adversary = "random";
  c.workers = workers();
  return c;
}

Verdict end_to_end_resilience(ExperimentReport& rep_out) {
  const auto cfg = resilience_config();
  const auto t0 = Clock::now();
  rep_out = run_resilience_experiment(cfg);
  const double secs = seconds_since(t0);
  const auto& sm = rep_out.summary;
  const auto successes = sm["success"]["successes"].get<std::size_t>();

  // Independent re-check of every certificate against regenerated hosts.
  std::ostringstream js;
  write_json(js, rep_out);
  std::size_t checked = 0;
  const auto failed = verify_experiment(cfg, nlohmann::json::parse(js.str()), &checked);
  std::size_t cap_breaches = 0;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    Rng rng(trial_seed(cfg.seed, i));
    const auto inst = resilience_instance(cfg, rng);
    cap_breaches += inst.h.h.max_degree() > kResR || !is_subgraph(inst.h.h, inst.g);
  }
  const bool pass = sm["r"].get<std::size_t>() == kResR && successes >= kResMinSuccess && failed == 0 &&
                    checked == successes && cap_breaches == 0 && secs < kResSeconds;
  return {pass, fmt("%zu/%zu certified (boosters %zu, rotation %zu, timeouts %zu), re-verified %zu with %zu "
                    "failures, adversary cap breaches %zu, %.1fs",
                    successes, cfg.trials, sm["by_boosters"].get<std::size_t>(),
                    sm["by_rotation"].get<std::size_t>(), sm["timeouts"].get<std::size_t>(), checked, failed,
                    cap_breaches, secs)};
}

struct BudgetTally {
  std::size_t runs = 0, iterations = 0, added = 0, degree = 0, saturated = 0, replay_mismatch = 0;
};

/// Replays R_0 plus the logged additions and re-checks the degree cap and
/// saturated-set avoidance at every step.
void replay_budget(const Graph& gp, const BoosterOutcome& bo, double delta, std::size_t d, BudgetTally& t) {
  ++t.runs;
  t.degree += bo.degree_violations;
  t.saturated += bo.saturated_violations;
  if (bo.failure == "expander") return;
  const double cap = 2.0 * delta * static_cast<double>(d);
  Graph r = bo.r0;
  for (const auto& rec : bo.log) {
    ++t.iterations;
    if (rec.added.empty()) continue;
    std::set<Vertex> sat;
    for (Vertex x = 0; x < Vertex(r.order()); ++x)
      if (static_cast<double>(r.degree(x)) >= cap - 1.0) sat.insert(x);
    for (const Edge& e : rec.added) {
      ++t.added;
      if (sat.count(e.u) || sat.count(e.v)) ++t.saturated;
      if (!gp.has_edge(e.u, e.v) || !r.add_edge(e.u, e.v)) ++t.replay_mismatch;
    }
    if (static_cast<double>(r.max_degree()) > cap) ++t.degree;
  }
  if (bo.success && !(r == bo.r_final)) ++t.replay_mismatch;
}

Verdict degree_budget(const ExperimentReport& rep) {
  const auto cfg = resilience_config();
  BudgetTally main, stress;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    // Same stream consumption as the experiment trial, so the same run.
    Rng rng(trial_seed(cfg.seed, i));
    const auto inst = resilience_instance(cfg, rng);
    const Graph gp = inst.host();
    const auto bo = booster_iteration(gp, cfg.delta, cfg.d, rng, BoosterOptions{});
    replay_budget(gp, bo, cfg.delta, cfg.d, main);
    if (rep.trials[i].iterations != bo.iterations) ++main.replay_mismatch;
  }
  // The main runs usually certify on R_0; a sparser R_0 exercises the loop.
  for (std::size_t i = 0; i < kStressTrials; ++i) {
    Rng rng(trial_seed(cfg.seed + 1, i));
    const auto inst = resilience_instance(cfg, rng);
    const Graph gp = inst.host();
    BoosterOptions o;
    o.expansion.ratio = 1.0;
    replay_budget(gp, booster_iteration(gp, cfg.delta, cfg.d, rng, o), cfg.delta, cfg.d, stress);
  }
  const std::size_t total = main.degree + main.saturated + main.replay_mismatch + stress.degree + stress.saturated +
                            stress.replay_mismatch;
  return {total == 0 && stress.added > 0,
          fmt("criterion-5 runs: %zu iterations, %zu edges added, %zu degree / %zu saturated violations, %zu "
              "replay mismatches; sparse-R0 stress (%zu runs): %zu iterations, %zu edges added, %zu / %zu "
              "violations, %zu mismatches",
              main.iterations, main.added, main.degree, main.saturated, main.replay_mismatch, stress.runs,
              stress.iterations, stress.added, stress.degree, stress.saturated, stress.replay_mismatch)};
}

// ---- C7 ----
Verdict counterexample() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Counterexample;
  cfg.n = kCexN;
  cfg.d = kCexD;
  cfg.trials = kCexTrials;
  cfg.seed = kCexSeed;
  cfg.workers = workers();
  const auto rep = run_counterexample_experiment(cfg);
  std::size_t successes = 0, bad = 0;
  for (const auto& t : rep.trials) {
    if (t.outcome != "success") continue;
    ++successes;
    Rng rng(trial_seed(cfg.seed, t.index));
    const Graph g = counterexample_instance(cfg, rng);
    const auto& c = t.certificate;
    Graph h(g.order());
    bool ok = true;
    for (const auto& e : c.at("deleted")) {
      const Vertex a = e.at(0).get<Vertex>(), b = e.at(1).get<Vertex>();
      ok &= g.has_edge(a, b) && h.add_edge(a, b);
    }
    ok &= h.max_degree() <= 1;
    const auto pa = c.at("part_a").get<VertexSet>(), pb = c.at("part_b").get<VertexSet>();
    std::vector<int> side(g.order(), -1);
    for (Vertex x : pa) ok &= side[x] == -1 ? (side[x] = 0, true) : false;
    for (Vertex x : pb) ok &= side[x] == -1 ? (side[x] = 1, true) : false;
    ok &= std::count(side.begin(), side.end(), -1) == 0 && pa.size() != pb.size();
    const Graph rest = subtract(g, h);
    for (const Edge& e : rest.edges()) ok &= side[e.u] != side[e.v];
    ok &= !oracle::hamiltonian(rest) && !exact_hamiltonian(rest);
    bad += !ok;
  }
  const auto iv = stats::wilson_interval(successes, rep.trials.size());
  return {successes > 0 && bad == 0,
          fmt("attacked %zu/%zu (rate %.3f, Wilson 95%% [%.3f, %.3f]), %zu certificates failing re-check or oracle",
              successes, rep.trials.size(), static_cast<double>(successes) / static_cast<double>(rep.trials.size()),
              iv.lo, iv.hi, bad)};
}

// ---- C8 ----
Verdict local_max_cut_contract() {
  Rng rng(808);
  std::size_t violations = 0, inconsistent = 0;
  for (std::size_t r = 0; r < kCutRuns; ++r) {
    const std::size_t n = 2 * (5 + rng.below(46));  // 10..100
    const Graph g = sample_regular(n, 3, rng).graph;
    const auto cut = local_max_cut(g, rng);
    inconsistent += !cut.consistent_with(g);
    for (auto c : oracle::cross_degrees(g, cut.side)) violations += c < 2;
  }
  return {violations == 0 && inconsistent == 0,
          fmt("%zu runs, %zu vertices with cross degree < 2, %zu inconsistent partitions", kCutRuns, violations,
              inconsistent)};
}

// ---- C9 ----
Verdict switching_invariants() {
  Rng rng(909);
  std::size_t degree_bad = 0, inverse_bad = 0, simple_runs = 0;
  for (std::size_t r = 0; r < kSwitchRuns; ++r) {
    const std::size_t n = 10 + rng.below(21);
    const std::size_t d = 2 + rng.below(4);
    if ((n * d) % 2) continue;
    const PointSet ps(DegreeSequence::regular(n, d));
    const MultiGraph m = project(ps, sample_configuration_sequential(ps, rng));
    const auto& edges = m.edges();
    std::size_t i = rng.below(edges.size()), j = rng.below(edges.size() - 1);
    if (j >= i) ++j;
    Edge e1 = edges[i], e2 = edges[j];
    const Vertex u1 = rng.bernoulli(0.5) ? e1.u : e1.v, u2 = e1.other(u1);
    const Vertex v1 = rng.bernoulli(0.5) ? e2.u : e2.v, v2 = e2.other(v1);
    const SwitchPlan plan{u1, u2, v1, v2};
    const MultiGraph after = apply_switch(m, plan);
    degree_bad += oracle::degrees_of(n, after.edges()) != oracle::degrees_of(n, edges) || after.size() != m.size();
    const MultiGraph back = apply_switch(after, plan.inverse());
    inverse_bad += oracle::multiset(back.edges()) != oracle::multiset(edges);

    // Simple-graph variant whenever the switch stays simple.
    if (is_simple(m) && std::set<Vertex>{u1, u2, v1, v2}.size() == 4) {
      const Graph g = [&] {
        Graph x(n);
        for (const Edge& e : edges) x.add_edge(e.u, e.v);
        return x;
      }();
      if (!g.has_edge(u1, v1) && !g.has_edge(u2, v2) && !(Edge(u1, v1) == Edge(u2, v2))) {
        ++simple_runs;
        const Graph h = apply_switch(g, plan);
        degree_bad += h.degrees() != g.degrees();
        inverse_bad += !(apply_switch(h, plan.inverse()) == g);
      }
    }
  }
  return {degree_bad == 0 && inverse_bad == 0,
          fmt("%zu multigraph switches (%zu also on simple graphs), %zu degree changes, %zu failed inversions",
              kSwitchRuns, simple_runs, degree_bad, inverse_bad)};
}

// ---- C10 ----
std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Verdict replay_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "regres_acceptance_replay";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<ExperimentConfig> cfgs(4);
  cfgs[0].kind = ExperimentKind::Uniformity, cfgs[0].n = 6, cfgs[0].d = 3, cfgs[0].trials = 3000;
  cfgs[1].kind = ExperimentKind::Resilience, cfgs[1].n = 300, cfgs[1].d = 10, cfgs[1].trials = 6;
  cfgs[2].kind = ExperimentKind::Counterexample, cfgs[2].n = 16, cfgs[2].d = 3, cfgs[2].trials = 40;
  cfgs[3].kind = ExperimentKind::EdgeDistribution, cfgs[3].n = 400, cfgs[3].d = 12, cfgs[3].trials = 10;
  cfgs[3].adversary = "matching";
  std::size_t files = 0, diffs = 0;
  for (auto& c : cfgs) {
    c.seed = 1234;
    std::string first_csv, first_json;
    for (std::size_t w : {std::size_t{1}, std::size_t{1}, workers() + 1}) {
      c.workers = w;
      c.out_csv = (dir / (to_string(c.kind) + ".csv")).string();
      c.out_json = (dir / (to_string(c.kind) + ".json")).string();
      write_outputs(run_experiment(c));
      const auto csv = slurp(c.out_csv), json = slurp(c.out_json);
      if (first_csv.empty()) {
        first_csv = csv;
        first_json = json;
        continue;
      }
      files += 2;
      diffs += (csv != first_csv) + (json != first_json);
    }
  }
  fs::remove_all(dir);
  return {diffs == 0 && files > 0,
          fmt("4 experiment kinds, %zu repeated output files compared byte for byte, %zu differ", files, diffs)};
}

}  // namespace

int main() {
  struct Row {
    const char* id;
    const char* name;
    std::function<Verdict()> run;
  };
  ExperimentReport resilience;
  const std::vector<Row> rows = {
      {"C1", "sampler uniformity", sampler_uniformity},
      {"C2", "Algorithm B exact law", algorithm_b_law_exact},
      {"C3", "configuration counts", configuration_counts},
      {"C4", "booster soundness", booster_soundness},
      {"C5", "end-to-end resilience", [&] { return end_to_end_resilience(resilience); }},
      {"C6", "degree budget invariant", [&] { return degree_budget(resilience); }},
      {"C7", "counterexample attack", counterexample},
      {"C8", "local max cut contract", local_max_cut_contract},
      {"C9", "switching invariants", switching_invariants},
      {"C10", "replay determinism", replay_determinism},
  };
  int failures = 0;
  for (const auto& row : rows) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = row.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << row.id << ' ' << (v.pass ? "PASS" : "FAIL") << "  " << row.name << " (" << fmt("%.1fs", seconds_since(t0))
              << ")  " << v.detail << std::endl;
  }
  std::cout << (failures ? "ACCEPTANCE FAILED: " : "ACCEPTANCE PASSED: ") << (10 - failures) << "/10 criteria"
            << std::endl;
  return failures ? 1 : 0;
}
