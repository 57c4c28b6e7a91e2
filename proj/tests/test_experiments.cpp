#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "regres/experiments.hpp"
#include "regres/hamiltonicity.hpp"
#include "regres/toml_lite.hpp"

using namespace regres;

namespace {

ExperimentConfig config(ExperimentKind kind, std::size_t n, std::size_t d, std::size_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.kind = kind;
  c.n = n;
  c.d = d;
  c.trials = trials;
  c.seed = seed;
  if (kind == ExperimentKind::EdgeDistribution) c.adversary = "none";
  return c;
}

std::string csv_of(const ExperimentReport& r) {
  std::ostringstream s;
  write_csv(s, r);
  return s.str();
}

std::string json_of(const ExperimentReport& r) {
  std::ostringstream s;
  write_json(s, r);
  return s.str();
}

}  // namespace

TEST(Toml, FlatKeysAndTypes) {
  const auto kv = parse_flat_toml(
      "# comment\nkind = \"resilience\"  # trailing\nn = 1_000\neps = 0.2\nflag = true\nname = \"a\\\"b\"\n");
  EXPECT_EQ(std::get<std::string>(kv.at("kind")), "resilience");
  EXPECT_EQ(std::get<std::int64_t>(kv.at("n")), 1000);
  EXPECT_DOUBLE_EQ(std::get<double>(kv.at("eps")), 0.2);
  EXPECT_TRUE(std::get<bool>(kv.at("flag")));
  EXPECT_EQ(std::get<std::string>(kv.at("name")), "a\"b");
}

TEST(Toml, Rejections) {
  EXPECT_THROW(parse_flat_toml("[table]\n"), ConfigParseError);
  EXPECT_THROW(parse_flat_toml("a = 1\na = 2\n"), ConfigParseError);
  EXPECT_THROW(parse_flat_toml("a = [1, 2]\n"), ConfigParseError);
  EXPECT_THROW(parse_flat_toml("a = \"open\n"), ConfigParseError);
  EXPECT_THROW(parse_flat_toml("just words\n"), ConfigParseError);
  EXPECT_THROW(parse_flat_toml("a = 12x\n"), ConfigParseError);
}

TEST(Config, ParsesAndDefaults) {
  const auto c = parse_experiment_config("kind = \"resilience\"\nn = 100\nd = 6\nseed = 5\n");
  EXPECT_EQ(c.kind, ExperimentKind::Resilience);
  EXPECT_EQ(c.n, 100u);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.adversary, "random");
  EXPECT_EQ(c.trials, 1u);
  const auto e = parse_experiment_config("kind = \"edge-distribution\"\nn = 100\nd = 6\nseed = 5\neps = 0.1\n");
  EXPECT_EQ(e.adversary, "none");
}

TEST(Config, ErrorsAreReported) {
  EXPECT_ANY_THROW(parse_experiment_config("kind = \"resilience\"\nn = 100\nd = 6\n"));          // no seed
  EXPECT_ANY_THROW(parse_experiment_config("n = 100\nd = 6\nseed = 1\n"));                      // no kind
  EXPECT_ANY_THROW(parse_experiment_config("kind = \"resilience\"\nn = 1\nd = 6\nseed = 1\nx = 2\n"));
  EXPECT_ANY_THROW(parse_experiment_config("kind = \"resilience\"\nn = \"ten\"\nd = 6\nseed = 1\n"));
  EXPECT_ANY_THROW(parse_experiment_config("kind = \"teleport\"\nn = 10\nd = 3\nseed = 1\n"));
  EXPECT_ANY_THROW(parse_experiment_config("kind = \"counterexample\"\nn = 16\nd = 4\nseed = 1\n"));
  EXPECT_ANY_THROW(parse_experiment_config("kind = \"uniformity\"\nn = 40\nd = 3\nseed = 1\n"));
  EXPECT_ANY_THROW(load_experiment_config("/nonexistent/path.toml"));
}

TEST(Enumeration, MatchesBacktrackingOracle) {
  for (auto [n, d] : {std::pair{4, 2}, {4, 3}, {5, 2}, {6, 2}, {6, 3}, {7, 2}, {8, 3}}) {
    const auto lib = enumerate_regular_graphs(n, d);
    const auto ref = oracle::regular_graphs(n, d);
    ASSERT_EQ(lib.size(), ref.size()) << n << "," << d;
    for (std::size_t i = 0; i < lib.size(); ++i) EXPECT_EQ(lib[i].edges(), ref[i]);
  }
  EXPECT_EQ(oracle::regular_graphs(4, 2).size(), 3u);
  EXPECT_EQ(oracle::regular_graphs(6, 3).size(), 70u);
}

TEST(Uniformity, FourCyclesPass) {
  const auto rep = run_uniformity_suite(config(ExperimentKind::Uniformity, 4, 2, 100000, 1));
  EXPECT_EQ(rep.summary["support_size"], 3);
  EXPECT_GT(rep.summary["sequential"]["p_value"].get<double>(), 0.001);
  EXPECT_GT(rep.summary["hybrid"]["p_value"].get<double>(), 0.001);
}

TEST(Uniformity, CompleteGraphOnFourIsConstant) {
  const auto rep = run_uniformity_suite(config(ExperimentKind::Uniformity, 4, 3, 500, 2));
  EXPECT_EQ(rep.summary["support_size"], 1);
  EXPECT_EQ(rep.summary["seq_counts"][0], 500);
}

TEST(Uniformity, SamplersAgreeOnCubicSix) {
  const auto rep = run_uniformity_suite(config(ExperimentKind::Uniformity, 6, 3, 50000, 3));
  EXPECT_EQ(rep.summary["support_size"], 70);
  EXPECT_GT(rep.summary["two_sample"]["p_value"].get<double>(), 0.001);
}

TEST(Resilience, NoDeletionAlmostAlwaysHamiltonian) {
  auto cfg = config(ExperimentKind::Resilience, 500, 10, 40, 4);
  cfg.eps = 0.5;
  const auto rep = run_resilience_experiment(cfg);
  EXPECT_EQ(rep.summary["r"], 0);
  const auto succ = rep.summary["success"]["successes"].get<std::size_t>();
  EXPECT_GE(succ, 39u);
  for (const auto& t : rep.trials) EXPECT_EQ(std::stoul(t.fields[1].second), 0u);  // deleted_edges
}

TEST(Resilience, MaxcutAdversaryReported) {
  auto cfg = config(ExperimentKind::Resilience, 400, 20, 4, 5);
  cfg.adversary = "maxcut";
  const auto rep = run_resilience_experiment(cfg);
  EXPECT_EQ(rep.trials.size(), 4u);
  for (const auto& t : rep.trials) {
    EXPECT_NE(t.outcome, "error");
    if (t.outcome != "success") {
      EXPECT_FALSE(t.fields.empty());
    }
  }
  std::size_t checked = 0;
  EXPECT_EQ(verify_experiment(cfg, nlohmann::json::parse(json_of(rep)), &checked), 0u);
}

TEST(Counterexample, AttacksConfirmedByOracle) {
  const auto cfg = config(ExperimentKind::Counterexample, 16, 3, 200, 6);
  const auto rep = run_counterexample_experiment(cfg);
  EXPECT_EQ(rep.summary["uncertified"], 0);
  EXPECT_EQ(rep.summary["oracle_checked"], rep.summary["oracle_confirmed"]);
  EXPECT_GT(rep.summary["attack"]["successes"].get<std::size_t>(), 0u);
  std::size_t checked = 0;
  EXPECT_EQ(verify_experiment(cfg, nlohmann::json::parse(json_of(rep)), &checked), 0u);
  EXPECT_EQ(checked, rep.summary["attack"]["successes"].get<std::size_t>());
}

TEST(Counterexample, LargerGraphsStillAttacked) {
  const auto rep = run_counterexample_experiment(config(ExperimentKind::Counterexample, 100, 3, 200, 7));
  const auto& a = rep.summary["attack"];
  EXPECT_GT(a["successes"].get<std::size_t>(), 0u);
  EXPECT_LE(a["wilson95_lo"].get<double>(), a["rate"].get<double>());
  std::cout << "n=100 cubic attack rate " << a["rate"] << " [" << a["wilson95_lo"] << ", " << a["wilson95_hi"]
            << "]\n";
}

TEST(EdgeDistribution, FullStarsConcentrate) {
  const auto rep = run_edge_distribution_probe(config(ExperimentKind::EdgeDistribution, 800, 16, 60, 8));
  EXPECT_NEAR(rep.summary["mean_ratio"].get<double>(), 1.0, 0.05);
}

TEST(EdgeDistribution, PlantedMatchingReported) {
  auto cfg = config(ExperimentKind::EdgeDistribution, 400, 12, 20, 9);
  cfg.adversary = "matching";
  const auto rep = run_edge_distribution_probe(cfg);
  EXPECT_GT(rep.summary["planted_edges"].get<std::size_t>(), 0u);
  EXPECT_TRUE(rep.summary.contains("within_25pct"));
}

TEST(Replay, OutputsIndependentOfWorkerCount) {
  auto cfg = config(ExperimentKind::Counterexample, 16, 3, 30, 10);
  const auto a = run_experiment(cfg);
  cfg.workers = 3;
  const auto b = run_experiment(cfg);
  EXPECT_EQ(csv_of(a), csv_of(b));
  EXPECT_EQ(json_of(a), json_of(b));
  cfg.seed = 11;
  EXPECT_NE(csv_of(run_experiment(cfg)), csv_of(a));
}

TEST(Verify, DetectsTamperedCycle) {
  const auto cfg = config(ExperimentKind::Resilience, 200, 8, 2, 12);
  const auto rep = run_resilience_experiment(cfg);
  auto j = nlohmann::json::parse(json_of(rep));
  std::size_t checked = 0;
  ASSERT_EQ(verify_experiment(cfg, j, &checked), 0u);
  ASSERT_GT(checked, 0u);
  for (auto& t : j["trials"]) {
    if (t.contains("certificate") && t["certificate"].contains("cycle")) {
      auto& c = t["certificate"]["cycle"];
      std::swap(c[0], c[c.size() / 2]);
      break;
    }
  }
  EXPECT_GT(verify_experiment(cfg, j, &checked), 0u);
}

TEST(TrialSeeds, StableAndDistinct) {
  EXPECT_EQ(trial_seed(1, 5), trial_seed(1, 5));
  EXPECT_NE(trial_seed(1, 5), trial_seed(1, 6));
  EXPECT_NE(trial_seed(1, 5), trial_seed(2, 5));
}
