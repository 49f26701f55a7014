// sqgt: construct, simulate, decode, and verify semiquantitative group
// testing schemes under the saturation model.
//
// Exit codes: 0 success, 1 claim/verdict failure, 2 configuration error,
// 3 work-budget refusal.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqgt/adaptive.hpp"
#include "sqgt/expander.hpp"
#include "sqgt/experiment.hpp"
#include "sqgt/io.hpp"
#include "sqgt/model.hpp"
#include "sqgt/nonadaptive.hpp"
#include "sqgt/oracle.hpp"
#include "sqgt/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitBudgetRefusal = 3;

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_from_flag = false;
  std::int64_t budget = sqgt::kDefaultWorkBudget;
  std::string report_path;
  bool quiet = false;
};

// --seed wins over the SQGT_SEED environment variable.
std::uint64_t effective_seed(const GlobalOptions& g) {
  if (g.seed_from_flag) return g.seed;
  if (const char* env = std::getenv("SQGT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw sqgt::ParameterError("SQGT_SEED is not an unsigned integer");
    }
  }
  return g.seed;
}

void add_global_options(CLI::App* cmd, GlobalOptions& g) {
  cmd->add_option("--seed", g.seed, "Random seed (overrides SQGT_SEED)")
      ->each([&g](const std::string&) { g.seed_from_flag = true; });
  cmd->add_option("--budget", g.budget, "Work budget for exhaustive searches");
  cmd->add_option("--report", g.report_path, "Write a JSON report to this path");
  cmd->add_flag("--quiet", g.quiet, "Suppress console summary output");
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw sqgt::InstanceError("cannot open file for writing: " + path);
  out << body;
}

int finish_experiment(const sqgt::ExperimentReport& report, const GlobalOptions& g,
                      const std::string& csv_path) {
  if (!g.report_path.empty()) write_text_file(g.report_path, sqgt::report_to_json(report));
  if (!csv_path.empty()) write_text_file(csv_path, sqgt::report_to_csv(report));
  if (!g.quiet) {
    std::cout << sqgt::scheme_name(report.config.scheme) << ": trials=" << report.trial_count
              << " successes=" << report.success_count << " success_rate=" << report.success_rate
              << " max_list_size=" << report.max_list_size
              << " round1_tests=" << report.info.round1_tests
              << " total_tests=" << report.info.total_tests
              << (report.any_claim_failed ? " CLAIM-FAILURE" : "") << "\n";
  }
  const bool all_succeeded = report.success_count == report.trial_count;
  return (report.any_claim_failed || !all_succeeded) ? kExitClaimFailure : kExitOk;
}

int run_adaptive_command(const GlobalOptions& g, int n, int d, int gamma, std::int64_t trials,
                         bool exhaustive, bool conventional, int threads,
                         const std::string& csv_path) {
  sqgt::ExperimentConfig config;
  config.scheme = conventional ? sqgt::Scheme::conventional : sqgt::Scheme::adaptive;
  config.n = n;
  config.d = d;
  config.gamma = gamma;
  config.trials = trials;
  config.exhaustive = exhaustive;
  config.seed = effective_seed(g);
  config.budget = g.budget;
  config.threads = threads;
  return finish_experiment(sqgt::run_experiment(config), g, csv_path);
}

int run_nonadaptive_command(const GlobalOptions& g, int n, int d, int gamma,
                            std::optional<int> q, std::optional<int> kappa, std::int64_t sample,
                            bool exhaustive, int threads, const std::string& csv_path) {
  sqgt::ExperimentConfig config;
  config.scheme = sqgt::Scheme::nonadaptive;
  config.n = n;
  config.d = d;
  config.gamma = gamma;
  config.q = q;
  config.kappa = kappa;
  config.trials = sample;
  config.exhaustive = exhaustive;
  config.seed = effective_seed(g);
  config.budget = g.budget;
  config.threads = threads;
  return finish_experiment(sqgt::run_experiment(config), g, csv_path);
}

int run_verify_command(const GlobalOptions& g, const std::string& matrix_path,
                       const std::string& graph_path, const std::string& code_path, int d,
                       int ell, std::optional<double> alpha, std::optional<double> beta) {
  nlohmann::json verdict;
  bool all_hold = true;

  if (!matrix_path.empty()) {
    const sqgt::MatrixFile mf = sqgt::load_matrix(matrix_path);
    nlohmann::json entry;
    entry["rows"] = mf.matrix.rows();
    entry["cols"] = mf.matrix.cols();
    entry["tau"] = mf.tau;
    entry["binary"] = mf.matrix.is_binary();
    if (mf.matrix.is_binary()) {
      const sqgt::DisjunctReport dis = sqgt::check_d_disjunct(mf.matrix, d, g.budget);
      const sqgt::ListDisjunctReport ld = sqgt::check_list_disjunct(mf.matrix, d, ell, g.budget);
      entry["d"] = d;
      entry["ell"] = ell;
      entry["d_disjunct"] = dis.holds;
      entry["list_disjunct"] = ld.holds;
      if (!ld.holds && ld.witness) {
        nlohmann::json w;
        nlohmann::json wi = nlohmann::json::array();
        for (int v : ld.witness->first) wi.push_back(v + 1);  // 1-based, as in files
        nlohmann::json wl = nlohmann::json::array();
        for (int v : ld.witness->second) wl.push_back(v + 1);
        w["defectives"] = std::move(wi);
        w["list"] = std::move(wl);
        entry["witness"] = std::move(w);
      }
      all_hold = all_hold && ld.holds;
    }
    verdict["matrix"] = std::move(entry);
  }

  if (!graph_path.empty()) {
    const sqgt::BipartiteGraph graph = sqgt::load_graph(graph_path);
    const double a = alpha.value_or(static_cast<double>(2 * d + 2) / graph.n_left());
    const double b = beta.value_or(3.0 * graph.k() / 4.0);
    nlohmann::json entry;
    entry["n_left"] = graph.n_left();
    entry["m_right"] = graph.m_right();
    entry["k"] = graph.k();
    entry["alpha"] = a;
    entry["beta"] = b;
    entry["expansion"] = sqgt::verify_expansion(graph, a, b, g.budget);
    entry["strict_expansion"] =
        sqgt::verify_strict_expansion(graph, static_cast<int>(a * graph.n_left() + 1e-9), g.budget);
    all_hold = all_hold && entry["strict_expansion"].get<bool>();
    verdict["graph"] = std::move(entry);
  }

  if (!code_path.empty()) {
    const sqgt::RsCode code = sqgt::load_code(code_path);
    nlohmann::json entry;
    entry["q"] = code.q();
    entry["kappa"] = code.kappa();
    entry["n"] = code.n();
    entry["mds_min_distance"] = code.min_distance();
    entry["delta"] = code.delta();
    const int measured = sqgt::code_min_distance(code, g.budget);
    entry["measured_min_distance"] = measured;
    entry["mds_confirmed"] = measured == code.min_distance();
    entry["distance_hypothesis"] = sqgt::code_satisfies_distance_hypothesis(code, d);
    all_hold = all_hold && measured == code.min_distance() &&
               sqgt::code_satisfies_distance_hypothesis(code, d);
    verdict["code"] = std::move(entry);
  }

  verdict["all_hold"] = all_hold;
  const std::string body = verdict.dump(2) + "\n";
  if (!g.report_path.empty()) write_text_file(g.report_path, body);
  if (!g.quiet) std::cout << body;
  return all_hold ? kExitOk : kExitClaimFailure;
}

int run_bounds_command(const GlobalOptions& g, int n, int d, int gamma) {
  const std::int64_t tau = sqgt::tau_for_gamma(gamma);
  const sqgt::AdaptiveTestCount counts = sqgt::adaptive_test_count(n, d, gamma);
  nlohmann::json j;
  j["n"] = n;
  j["d"] = d;
  j["gamma"] = gamma;
  j["tau"] = tau;
  j["adaptive_lower_bound"] = sqgt::adaptive_lower_bound(n, d, tau);
  if (d >= 2) j["nonadaptive_lower_bound"] = sqgt::nonadaptive_lower_bound(n, d, tau);
  j["round1_tests"] = counts.round1;
  j["round2_max"] = counts.round2_max;
  j["round1_ratio"] = counts.round1 / sqgt::adaptive_lower_bound(n, d, tau);
  const sqgt::RsCode code = sqgt::build_rs_code(n, d, gamma);
  j["nonadaptive_q"] = code.q();
  j["nonadaptive_kappa"] = code.kappa();
  j["nonadaptive_tests"] = sqgt::nonadaptive_test_count(code, gamma);
  const std::string body = j.dump(2) + "\n";
  if (!g.report_path.empty()) write_text_file(g.report_path, body);
  if (!g.quiet) std::cout << body;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiquantitative group testing schemes under the saturation model"};
  app.require_subcommand(1);

  GlobalOptions g;

  // gen-expander
  auto* gen_expander = app.add_subcommand("gen-expander", "Generate a random verified expander");
  int ge_n = 0, ge_d = 0, ge_gamma = 1;
  std::string ge_out = "expander";
  gen_expander->add_option("--n", ge_n, "Population size")->required();
  gen_expander->add_option("--d", ge_d, "Defective bound")->required();
  gen_expander->add_option("--gamma", ge_gamma, "Quantization parameter");
  gen_expander->add_option("--out", ge_out, "Output path prefix");
  add_global_options(gen_expander, g);

  // gen-code
  auto* gen_code = app.add_subcommand("gen-code", "Generate a Reed-Solomon bucket scheme");
  int gc_n = 0, gc_d = 0, gc_gamma = 1;
  std::optional<int> gc_q, gc_kappa;
  std::string gc_out = "code";
  gen_code->add_option("--n", gc_n, "Population size")->required();
  gen_code->add_option("--d", gc_d, "Defective bound")->required();
  gen_code->add_option("--gamma", gc_gamma, "Quantization parameter");
  gen_code->add_option("--q", gc_q, "Field size override (odd prime)");
  gen_code->add_option("--kappa", gc_kappa, "Code dimension override (requires --q)");
  gen_code->add_option("--out", gc_out, "Output path prefix");
  add_global_options(gen_code, g);

  // adaptive
  auto* adaptive = app.add_subcommand("adaptive", "Run the two-round adaptive scheme");
  int ad_n = 0, ad_d = 0, ad_gamma = 1, ad_threads = sqgt::default_thread_count();
  std::int64_t ad_trials = 100;
  bool ad_exhaustive = false, ad_conventional = false;
  std::string ad_csv;
  adaptive->add_option("--n", ad_n, "Population size")->required();
  adaptive->add_option("--d", ad_d, "Defective bound")->required();
  adaptive->add_option("--gamma", ad_gamma, "Quantization parameter");
  adaptive->add_option("--trials", ad_trials, "Number of random defective sets");
  adaptive->add_flag("--exhaustive", ad_exhaustive, "Enumerate every |I| <= d");
  adaptive->add_flag("--conventional", ad_conventional,
                     "Use the conventional OR-channel scheme instead of merged SQGT tests");
  adaptive->add_option("--threads", ad_threads, "Worker threads (does not affect results)");
  adaptive->add_option("--csv", ad_csv, "Write per-trial rows to this CSV file");
  add_global_options(adaptive, g);

  // nonadaptive
  auto* nonadaptive = app.add_subcommand("nonadaptive", "Run the one-round bucket scheme");
  int na_n = 0, na_d = 0, na_gamma = 1, na_threads = sqgt::default_thread_count();
  std::optional<int> na_q, na_kappa;
  std::int64_t na_sample = 100;
  bool na_exhaustive = false;
  std::string na_csv;
  nonadaptive->add_option("--n", na_n, "Population size")->required();
  nonadaptive->add_option("--d", na_d, "Defective bound")->required();
  nonadaptive->add_option("--gamma", na_gamma, "Quantization parameter");
  nonadaptive->add_option("--q", na_q, "Field size override (odd prime)");
  nonadaptive->add_option("--kappa", na_kappa, "Code dimension override (requires --q)");
  nonadaptive->add_option("--sample", na_sample, "Number of random defective sets");
  nonadaptive->add_flag("--exhaustive", na_exhaustive, "Enumerate every |I| <= d");
  nonadaptive->add_option("--threads", na_threads, "Worker threads (does not affect results)");
  nonadaptive->add_option("--csv", na_csv, "Write per-trial rows to this CSV file");
  add_global_options(nonadaptive, g);

  // verify
  auto* verify = app.add_subcommand("verify", "Verify matrix/graph/code files");
  std::string ve_matrix, ve_graph, ve_code;
  int ve_d = 1, ve_ell = 0;
  std::optional<double> ve_alpha, ve_beta;
  verify->add_option("--matrix", ve_matrix, "Matrix file to check for (list-)disjunctness");
  verify->add_option("--graph", ve_graph, "Graph file to check for expansion");
  verify->add_option("--code", ve_code, "Code file to check distances");
  verify->add_option("--d", ve_d, "Defective bound for the checks");
  verify->add_option("--ell", ve_ell, "List slack for list-disjunctness");
  verify->add_option("--alpha", ve_alpha, "Expansion subset fraction (default (2d+2)/n)");
  verify->add_option("--beta", ve_beta, "Expansion factor (default 3k/4)");
  add_global_options(verify, g);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Print bound calculators and test counts");
  int bo_n = 0, bo_d = 0, bo_gamma = 1;
  bounds->add_option("--n", bo_n, "Population size")->required();
  bounds->add_option("--d", bo_d, "Defective bound")->required();
  bounds->add_option("--gamma", bo_gamma, "Quantization parameter");
  add_global_options(bounds, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;  // --help exits 0
  }

  try {
    if (gen_expander->parsed()) {
      const sqgt::GenResult result = sqgt::gen_expander_files(
          ge_n, ge_d, ge_gamma, effective_seed(g), g.budget, ge_out);
      if (!g.quiet)
        for (const std::string& f : result.files) std::cout << f << "\n";
      return kExitOk;
    }
    if (gen_code->parsed()) {
      const sqgt::GenResult result =
          sqgt::gen_code_files(gc_n, gc_d, gc_gamma, gc_q, gc_kappa, gc_out);
      if (!g.quiet)
        for (const std::string& f : result.files) std::cout << f << "\n";
      return kExitOk;
    }
    if (adaptive->parsed())
      return run_adaptive_command(g, ad_n, ad_d, ad_gamma, ad_trials, ad_exhaustive,
                                  ad_conventional, ad_threads, ad_csv);
    if (nonadaptive->parsed())
      return run_nonadaptive_command(g, na_n, na_d, na_gamma, na_q, na_kappa, na_sample,
                                     na_exhaustive, na_threads, na_csv);
    if (verify->parsed())
      return run_verify_command(g, ve_matrix, ve_graph, ve_code, ve_d, ve_ell, ve_alpha, ve_beta);
    if (bounds->parsed()) return run_bounds_command(g, bo_n, bo_d, bo_gamma);
  } catch (const sqgt::BudgetError& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return kExitBudgetRefusal;
  } catch (const std::invalid_argument& e) {  // ParameterError, InstanceError
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;  // no subcommand matched (unreachable)
}
