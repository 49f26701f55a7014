#pragma once

// Experiment runner tying construction, simulation, decoding, claim
// verification, and bound comparison together, with deterministic
// byte-for-byte reproducible JSON/CSV reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqgt/model.hpp"

namespace sqgt {

enum class Scheme { adaptive, nonadaptive, conventional };

std::string scheme_name(Scheme s);

struct ExperimentConfig {
  Scheme scheme = Scheme::adaptive;
  int n = 0;
  int d = 0;
  int gamma = 1;
  std::optional<int> q;      // nonadaptive: override the code search
  std::optional<int> kappa;  // nonadaptive: override the code dimension
  bool exhaustive = false;   // enumerate every |I| <= d instead of sampling
  std::int64_t trials = 0;   // sampled trials when !exhaustive
  std::uint64_t seed = 0;
  std::int64_t budget = kDefaultWorkBudget;
  int threads = 1;  // execution detail; never part of the report
};

// One decode trial.  Adaptive/conventional fill all fields; nonadaptive
// has no candidate-list round, so list_size = decoded-set size and
// round2_tests = hamming_that_t = 0.
struct TrialRecord {
  std::vector<int> defectives;  // 0-based here; 1-based in reports
  std::int64_t round1_tests = 0;
  std::int64_t list_size = 0;
  std::int64_t round2_tests = 0;
  std::int64_t hamming_that_t = 0;  // d_H(t_hat, t)
  bool success = false;
  bool claims_ok = true;
};

// Construction metadata echoed into reports.
struct SchemeInfo {
  // adaptive / conventional
  int k = 0;
  int m = 0;
  double alpha = 0;
  double beta = 0;
  bool verified = false;  // strict expansion exhaustively certified
  int attempts = 0;
  std::int64_t round1_tests = 0;
  std::int64_t round2_max = 0;
  // nonadaptive
  int q = 0;
  int kappa = 0;
  double delta = 0;
  int buckets_per_coord = 0;
  bool distance_hypothesis = false;  // delta > 1 - 1/(2d)
  std::int64_t total_tests = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  SchemeInfo info;
  std::vector<TrialRecord> trials;
  std::int64_t trial_count = 0;
  std::int64_t success_count = 0;
  double success_rate = 1.0;
  std::int64_t max_list_size = 0;
  std::int64_t max_hamming_that_t = 0;
  std::int64_t hamming_slack = 0;  // floor(d*k/4) - max_hamming_that_t
  double adaptive_bound = 0;       // (d/log2 tau) * log2(n/d)
  double nonadaptive_bound = 0;    // d^2/(log2 tau)^3 * log_d n; 0 when d = 1
  double round1_ratio = 0;         // round-1 (or total) tests / adaptive_bound
  double nonadaptive_ratio = 0;    // total tests / nonadaptive_bound; 0 when d = 1
  bool any_claim_failed = false;
};

// Runs the configured experiment.  Deterministic given (config minus
// threads): per-trial seeds derive from the base seed by a counter-based
// scheme, trials land in enumeration order, and the report excludes every
// execution detail.  Per-trial claim checks run the full brute-force
// oracle except in nonadaptive exhaustive mode, where only decode
// soundness/exactness is recorded (the full oracle is quadratic in n and
// meant for sampled runs).  Throws ParameterError/InstanceError on invalid
// config and propagates BudgetError refusals.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Canonical JSON rendering (sorted keys, integral numbers as integers);
// byte-identical for identical (config minus threads, seed).
std::string report_to_json(const ExperimentReport& report);

// Lossy per-trial CSV export.
std::string report_to_csv(const ExperimentReport& report);

struct GenResult {
  std::vector<std::string> files;  // paths written, manifest last
};

// Writes <prefix>.graph, <prefix>.B.matrix, <prefix>.s1.matrix,
// <prefix>.s2.matrix and <prefix>.manifest.json for a (verified when
// feasible) random expander.
GenResult gen_expander_files(int n, int d, int gamma, std::uint64_t seed, std::int64_t budget,
                             const std::string& prefix);

// Writes <prefix>.code, <prefix>.s1.matrix, <prefix>.s2.matrix and
// <prefix>.manifest.json for the (possibly overridden) Reed-Solomon code.
GenResult gen_code_files(int n, int d, int gamma, std::optional<int> q, std::optional<int> kappa,
                         const std::string& prefix);

}  // namespace sqgt
