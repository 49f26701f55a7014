#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "sqgt/adaptive.hpp"
#include "sqgt/experiment.hpp"
#include "sqgt/io.hpp"
#include "sqgt/model.hpp"

namespace {

sqgt::ExperimentConfig adaptive30(std::int64_t trials, std::uint64_t seed) {
  sqgt::ExperimentConfig config;
  config.scheme = sqgt::Scheme::adaptive;
  config.n = 30;
  config.d = 2;
  config.gamma = 2;
  config.trials = trials;
  config.seed = seed;
  return config;
}

nlohmann::json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("adaptive sampled run decodes every trial and meets the claims") {
  const sqgt::ExperimentReport report = sqgt::run_experiment(adaptive30(20, 7));
  CHECK_EQ(report.trial_count, 20);
  CHECK_EQ(report.success_count, 20);
  CHECK_EQ(report.success_rate, 1.0);
  CHECK_FALSE(report.any_claim_failed);
  CHECK_EQ(report.info.k, 3);
  CHECK_EQ(report.info.m, 1065);
  CHECK(report.info.verified);
  CHECK_EQ(report.info.round1_tests, 1066);
  CHECK_EQ(report.info.round2_max, 5);
  CHECK_EQ(report.info.total_tests, 1071);
  CHECK_LE(report.max_list_size, 5);     // d + ceil(10d/8)
  CHECK_GE(report.hamming_slack, 0);     // max d_H within floor(d*k/4)
  CHECK_GT(report.round1_ratio, 1.0);    // construction pays a constant factor
  for (const sqgt::TrialRecord& trial : report.trials) {
    CHECK_LE(static_cast<int>(trial.defectives.size()), 2);
    CHECK_EQ(trial.round1_tests, 1066);
    CHECK_EQ(trial.round2_tests, trial.list_size);
  }
}

TEST_CASE("reports are byte-identical across thread counts and reruns") {
  sqgt::ExperimentConfig config = adaptive30(8, 11);
  const sqgt::ExperimentReport one = sqgt::run_experiment(config);
  config.threads = 4;
  const sqgt::ExperimentReport four = sqgt::run_experiment(config);
  CHECK_EQ(sqgt::report_to_json(one), sqgt::report_to_json(four));
  CHECK_EQ(sqgt::report_to_csv(one), sqgt::report_to_csv(four));
  const sqgt::ExperimentReport again = sqgt::run_experiment(config);
  CHECK_EQ(sqgt::report_to_json(four), sqgt::report_to_json(again));

  sqgt::ExperimentConfig other = adaptive30(8, 12);
  CHECK_NE(sqgt::report_to_json(one), sqgt::report_to_json(sqgt::run_experiment(other)));
}

TEST_CASE("exhaustive mode enumerates sets in lexicographic order") {
  sqgt::ExperimentConfig config;
  config.scheme = sqgt::Scheme::adaptive;
  config.n = 8;
  config.d = 1;
  config.gamma = 1;
  config.exhaustive = true;
  const sqgt::ExperimentReport report = sqgt::run_experiment(config);
  REQUIRE_EQ(report.trial_count, 9);  // empty set + 8 singletons
  CHECK(report.trials[0].defectives.empty());
  CHECK_EQ(report.trials[1].defectives, std::vector<int>{0});
  CHECK_EQ(report.trials[8].defectives, std::vector<int>{7});
  CHECK_EQ(report.success_count, 9);
  CHECK_FALSE(report.any_claim_failed);

  // d = 1 has no nonadaptive reference bound.
  const nlohmann::json j = nlohmann::json::parse(sqgt::report_to_json(report));
  CHECK_FALSE(j["aggregates"].contains("nonadaptive_lower_bound"));
  CHECK(j["aggregates"].contains("adaptive_lower_bound"));
}

TEST_CASE("nonadaptive runs honor code overrides and defaults") {
  sqgt::ExperimentConfig config;
  config.scheme = sqgt::Scheme::nonadaptive;
  config.n = 841;
  config.d = 2;
  config.gamma = 2;
  config.q = 29;
  config.kappa = 2;
  config.trials = 6;
  config.seed = 5;
  const sqgt::ExperimentReport report = sqgt::run_experiment(config);
  CHECK_EQ(report.info.q, 29);
  CHECK_EQ(report.info.kappa, 2);
  CHECK_EQ(report.info.buckets_per_coord, 15);
  CHECK_EQ(report.info.total_tests, 870);
  CHECK(report.info.distance_hypothesis);
  CHECK_EQ(report.success_count, 6);
  CHECK_FALSE(report.any_claim_failed);
  for (const sqgt::TrialRecord& trial : report.trials) {
    CHECK_EQ(trial.round2_tests, 0);
    CHECK_EQ(trial.hamming_that_t, 0);
  }

  sqgt::ExperimentConfig defaults;
  defaults.scheme = sqgt::Scheme::nonadaptive;
  defaults.n = 100;
  defaults.d = 2;
  defaults.gamma = 2;
  defaults.trials = 4;
  const sqgt::ExperimentReport auto_code = sqgt::run_experiment(defaults);
  CHECK_EQ(auto_code.info.q, 11);
  CHECK_EQ(auto_code.info.kappa, 2);
  CHECK_EQ(auto_code.info.total_tests, 132);
  CHECK_EQ(auto_code.success_count, 4);
}

TEST_CASE("run_experiment rejects invalid configurations") {
  sqgt::ExperimentConfig config = adaptive30(1, 0);
  config.kappa = 2;  // kappa without q
  CHECK_THROWS_AS(sqgt::run_experiment(config), sqgt::ParameterError);
  config.kappa.reset();
  config.q = 11;  // code override on the adaptive scheme
  CHECK_THROWS_AS(sqgt::run_experiment(config), sqgt::ParameterError);

  for (auto mutate : std::vector<void (*)(sqgt::ExperimentConfig&)>{
           [](sqgt::ExperimentConfig& c) { c.threads = 0; },
           [](sqgt::ExperimentConfig& c) { c.trials = -1; },
           [](sqgt::ExperimentConfig& c) { c.d = c.n; },
           [](sqgt::ExperimentConfig& c) { c.gamma = 0; },
           [](sqgt::ExperimentConfig& c) { c.budget = 0; }}) {
    sqgt::ExperimentConfig bad = adaptive30(1, 0);
    mutate(bad);
    CHECK_THROWS_AS(sqgt::run_experiment(bad), sqgt::ParameterError);
  }
}

TEST_CASE("gen_expander_files writes coherent artifacts") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "sqgt_gen_expander_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string prefix = (dir / "exp").string();

  const sqgt::GenResult result =
      sqgt::gen_expander_files(40, 1, 2, 21, sqgt::kDefaultWorkBudget, prefix);
  REQUIRE_EQ(result.files.size(), 5);

  const sqgt::BipartiteGraph graph = sqgt::load_graph(prefix + ".graph");
  CHECK_EQ(graph.n_left(), 40);
  CHECK_EQ(graph.m_right(), 946);
  CHECK_EQ(graph.k(), 4);

  const sqgt::TestMatrix B = sqgt::load_matrix(prefix + ".B.matrix").matrix;
  CHECK_EQ(B, sqgt::to_binary_matrix(graph));
  const sqgt::MergedScheme scheme = sqgt::build_merged(B, 2);
  const sqgt::MatrixFile s1 = sqgt::load_matrix(prefix + ".s1.matrix");
  CHECK_EQ(s1.matrix, scheme.s1);
  CHECK_EQ(s1.tau, 64);
  CHECK_EQ(sqgt::load_matrix(prefix + ".s2.matrix").matrix, scheme.s2);

  const nlohmann::json manifest = parse_file(prefix + ".manifest.json");
  CHECK_EQ(manifest["command"], "gen-expander");
  CHECK_EQ(manifest["m"], 946);
  CHECK(manifest["verified"].get<bool>());
  CHECK_EQ(manifest["round1_tests"], 946);  // 2 * ceil(946 / 2)
  CHECK_EQ(manifest["files"].size(), 4);
  fs::remove_all(dir);
}

TEST_CASE("gen_code_files writes coherent artifacts") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "sqgt_gen_code_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string prefix = (dir / "code").string();

  const sqgt::GenResult result = sqgt::gen_code_files(100, 2, 2, {}, {}, prefix);
  REQUIRE_EQ(result.files.size(), 4);
  const sqgt::RsCode code = sqgt::load_code(prefix + ".code");
  CHECK_EQ(code, sqgt::RsCode(11, 2, 100));
  const sqgt::MatrixFile s1 = sqgt::load_matrix(prefix + ".s1.matrix");
  CHECK_EQ(s1.matrix.rows(), 66);
  CHECK_EQ(s1.matrix.cols(), 100);
  CHECK_EQ(s1.tau, 64);

  const nlohmann::json manifest = parse_file(prefix + ".manifest.json");
  CHECK_EQ(manifest["command"], "gen-code");
  CHECK_EQ(manifest["q"], 11);
  CHECK_EQ(manifest["total_tests"], 132);
  CHECK(manifest["distance_hypothesis"].get<bool>());

  CHECK_THROWS_AS(sqgt::gen_code_files(100, 2, 2, {}, 3, prefix), sqgt::ParameterError);
  fs::remove_all(dir);
}

TEST_CASE("CSV export carries one row per trial") {
  const sqgt::ExperimentReport report = sqgt::run_experiment(adaptive30(3, 2));
  const std::string csv = sqgt::report_to_csv(report);
  REQUIRE(csv.rfind("trial,defectives,round1_tests,list_size,round2_tests,"
                    "hamming_that_t,success,claims_ok\n", 0) == 0);
  CHECK_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);  // header + 3 trials
  CHECK(csv.find("\n0,\"") != std::string::npos);
}

TEST_CASE("conventional scheme reuses the expander with plain OR tests") {
  sqgt::ExperimentConfig config = adaptive30(10, 1);
  config.scheme = sqgt::Scheme::conventional;
  const sqgt::ExperimentReport report = sqgt::run_experiment(config);
  CHECK_EQ(report.info.round1_tests, 1065);
  CHECK_EQ(report.info.round2_max, 5);  // 2d + 1
  CHECK_EQ(report.info.total_tests, 1070);
  CHECK_EQ(report.success_count, 10);
  CHECK_FALSE(report.any_claim_failed);
  for (const sqgt::TrialRecord& trial : report.trials)
    CHECK_LT(trial.list_size, 2 * static_cast<std::int64_t>(trial.defectives.size()) + 2);
}

TEST_CASE("scheme_name spells the three schemes") {
  CHECK_EQ(sqgt::scheme_name(sqgt::Scheme::adaptive), "adaptive");
  CHECK_EQ(sqgt::scheme_name(sqgt::Scheme::nonadaptive), "nonadaptive");
  CHECK_EQ(sqgt::scheme_name(sqgt::Scheme::conventional), "conventional");
}

}  // TEST_SUITE("experiment")
