#include "sqgt/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sqgt/adaptive.hpp"
#include "sqgt/expander.hpp"
#include "sqgt/io.hpp"
#include "sqgt/nonadaptive.hpp"
#include "sqgt/oracle.hpp"
#include "sqgt/parallel.hpp"
#include "sqgt/random.hpp"

namespace sqgt {
namespace {

using json = nlohmann::json;

// Seed stream reserved for scheme construction; trial streams use the
// trial index itself, far below this tag.
constexpr std::uint64_t kConstructionStream = 0x636f6e7374727563ULL;

void validate(const ExperimentConfig& config) {
  if (config.n < 2 || config.d < 1 || config.d >= config.n)
    throw ParameterError("experiment: need 1 <= d < n");
  if (config.gamma < 1) throw ParameterError("experiment: gamma must be >= 1");
  if (config.trials < 0) throw ParameterError("experiment: negative trial count");
  if (config.budget < 1) throw ParameterError("experiment: budget must be positive");
  if (config.threads < 1) throw ParameterError("experiment: threads must be >= 1");
  if (config.kappa && !config.q)
    throw ParameterError("experiment: --kappa requires --q");
  if ((config.q || config.kappa) && config.scheme != Scheme::nonadaptive)
    throw ParameterError("experiment: code overrides apply to the nonadaptive scheme only");
}

// All defective sets with |I| <= d in lexicographic order.
std::vector<std::vector<int>> enumerate_sets(int n, int d) {
  std::vector<std::vector<int>> sets;
  std::vector<int> items;
  auto dfs = [&](auto&& self, int depth, int start) -> void {
    sets.push_back(items);
    if (depth == d) return;
    for (int v = start; v < n; ++v) {
      items.push_back(v);
      self(self, depth + 1, v + 1);
      items.pop_back();
    }
  };
  dfs(dfs, 0, 0);
  return sets;
}

// Random |I| <= d: size uniform in {0..d}, then a uniform subset.
std::vector<int> random_set(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int size = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(d) + 1));
  std::vector<int> items;
  items.reserve(static_cast<std::size_t>(size));
  while (static_cast<int>(items.size()) < size) {
    const int v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    if (std::find(items.begin(), items.end(), v) == items.end()) items.push_back(v);
  }
  std::sort(items.begin(), items.end());
  return items;
}

void fill_aggregates(ExperimentReport& report, int d, int k) {
  report.trial_count = static_cast<std::int64_t>(report.trials.size());
  report.success_count = 0;
  report.max_list_size = 0;
  report.max_hamming_that_t = 0;
  report.any_claim_failed = false;
  for (const TrialRecord& t : report.trials) {
    if (t.success) ++report.success_count;
    report.max_list_size = std::max(report.max_list_size, t.list_size);
    report.max_hamming_that_t = std::max(report.max_hamming_that_t, t.hamming_that_t);
    if (!t.claims_ok) report.any_claim_failed = true;
  }
  report.success_rate = report.trials.empty()
                            ? 1.0
                            : static_cast<double>(report.success_count) / report.trial_count;
  report.hamming_slack =
      static_cast<std::int64_t>(d) * k / 4 - report.max_hamming_that_t;

  const ExperimentConfig& c = report.config;
  const std::int64_t tau = tau_for_gamma(c.gamma);
  report.adaptive_bound = adaptive_lower_bound(c.n, c.d, tau);
  report.round1_ratio = report.info.round1_tests / report.adaptive_bound;
  if (c.d >= 2) {
    report.nonadaptive_bound = nonadaptive_lower_bound(c.n, c.d, tau);
    report.nonadaptive_ratio = report.info.total_tests / report.nonadaptive_bound;
  }
}

ExperimentReport run_expander_scheme(const ExperimentConfig& config) {
  ExperimentReport report;
  report.config = config;

  const VerifiedExpander ve = verified_random_expander(
      config.n, config.d, derive_seed(config.seed, kConstructionStream), config.budget);
  const TestMatrix B = to_binary_matrix(ve.graph);

  report.info.k = ve.params.k;
  report.info.m = ve.params.m;
  report.info.alpha = ve.params.alpha;
  report.info.beta = ve.params.beta;
  report.info.verified = ve.verified;
  report.info.attempts = ve.attempts;
  report.info.round2_max = config.d + (10 * config.d + 7) / 8;

  std::vector<std::vector<int>> sets;
  if (config.exhaustive) {
    sets = enumerate_sets(config.n, config.d);
  } else {
    sets.reserve(static_cast<std::size_t>(config.trials));
    for (std::int64_t i = 0; i < config.trials; ++i)
      sets.push_back(random_set(config.n, config.d, derive_seed(config.seed, static_cast<std::uint64_t>(i))));
  }
  report.trials.resize(sets.size());

  if (config.scheme == Scheme::adaptive) {
    const MergedScheme scheme = build_merged(B, config.gamma);
    report.info.round1_tests = 2 * static_cast<std::int64_t>(scheme.group_count);
    report.info.total_tests = report.info.round1_tests + report.info.round2_max;
    parallel_for(static_cast<std::int64_t>(sets.size()), config.threads, [&](std::int64_t i) {
      const DefectiveSet I(sets[static_cast<std::size_t>(i)], config.n);
      const TwoRoundResult result = two_round_decode(scheme, I, config.d);
      const AdaptiveClaimReport claims = verify_adaptive_claims(scheme, I, config.d);
      TrialRecord& rec = report.trials[static_cast<std::size_t>(i)];
      rec.defectives = sets[static_cast<std::size_t>(i)];
      rec.round1_tests = result.round1_tests;
      rec.list_size = static_cast<std::int64_t>(result.list.size());
      rec.round2_tests = result.round2_tests;
      rec.hamming_that_t = claims.hamming_that_t;
      rec.success = result.decoded == I;
      rec.claims_ok = claims.all_ok();
    });
  } else {  // conventional OR-channel two-round scheme on the same B
    report.info.round1_tests = B.rows();
    report.info.round2_max = 2 * config.d + 1;  // |L| < 2d + 2 on a verified expander
    report.info.total_tests = report.info.round1_tests + report.info.round2_max;
    parallel_for(static_cast<std::int64_t>(sets.size()), config.threads, [&](std::int64_t i) {
      const DefectiveSet I(sets[static_cast<std::size_t>(i)], config.n);
      const OutcomeVector t = binary_outcome(B, I);
      const std::vector<int> list = recover_list(t, B);
      std::vector<int> found;
      for (int p : list)
        if (I.contains(p)) found.push_back(p);
      TrialRecord& rec = report.trials[static_cast<std::size_t>(i)];
      rec.defectives = sets[static_cast<std::size_t>(i)];
      rec.round1_tests = B.rows();
      rec.list_size = static_cast<std::int64_t>(list.size());
      rec.round2_tests = rec.list_size;
      rec.hamming_that_t = 0;
      rec.success = DefectiveSet(found, config.n) == I;
      rec.claims_ok = rec.list_size < 2 * I.size() + 2;  // Corollary-2 bound
    });
  }

  fill_aggregates(report, config.d, report.info.k);
  return report;
}

ExperimentReport run_nonadaptive_scheme(const ExperimentConfig& config) {
  ExperimentReport report;
  report.config = config;

  RsCode code;
  if (config.q) {
    int kappa;
    if (config.kappa) {
      kappa = *config.kappa;
    } else {
      kappa = 1;  // smallest kappa with q^kappa >= n
      std::int64_t p = *config.q;
      while (p < config.n) {
        p *= *config.q;
        ++kappa;
      }
    }
    code = RsCode(*config.q, kappa, config.n);
  } else {
    code = build_rs_code(config.n, config.d, config.gamma);
  }
  const BucketScheme scheme = build_bucket_scheme(code, config.gamma);

  report.info.q = code.q();
  report.info.kappa = code.kappa();
  report.info.delta = code.delta();
  report.info.buckets_per_coord = scheme.buckets_per_coord;
  report.info.distance_hypothesis = code_satisfies_distance_hypothesis(code, config.d);
  report.info.total_tests = nonadaptive_test_count(code, config.gamma);
  report.info.round1_tests = report.info.total_tests;  // single round

  std::vector<std::vector<int>> sets;
  if (config.exhaustive) {
    sets = enumerate_sets(config.n, config.d);
  } else {
    sets.reserve(static_cast<std::size_t>(config.trials));
    for (std::int64_t i = 0; i < config.trials; ++i)
      sets.push_back(random_set(config.n, config.d, derive_seed(config.seed, static_cast<std::uint64_t>(i))));
  }
  report.trials.resize(sets.size());

  parallel_for(static_cast<std::int64_t>(sets.size()), config.threads, [&](std::int64_t i) {
    const DefectiveSet I(sets[static_cast<std::size_t>(i)], config.n);
    const OutcomeVector s1_out = simulate_outcomes(scheme.s1, I, scheme.tau);
    const OutcomeVector s2_out = simulate_outcomes(scheme.s2, I, scheme.tau);
    const DefectiveSet decoded = exclusion_decode(scheme, s1_out, s2_out);
    TrialRecord& rec = report.trials[static_cast<std::size_t>(i)];
    rec.defectives = sets[static_cast<std::size_t>(i)];
    rec.round1_tests = report.info.total_tests;
    rec.list_size = decoded.size();
    rec.round2_tests = 0;
    rec.hamming_that_t = 0;
    rec.success = decoded == I;
    if (config.exhaustive) {
      // Soundness only; the full oracle is quadratic in n.
      rec.claims_ok = std::includes(decoded.begin(), decoded.end(), I.begin(), I.end());
    } else {
      rec.claims_ok = verify_nonadaptive_claims(scheme, I, config.d).all_ok();
    }
  });

  fill_aggregates(report, config.d, 0);
  return report;
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["scheme"] = scheme_name(c.scheme);
  j["n"] = c.n;
  j["d"] = c.d;
  j["gamma"] = c.gamma;
  j["seed"] = c.seed;
  j["exhaustive"] = c.exhaustive;
  j["trials"] = c.trials;
  j["budget"] = c.budget;
  if (c.q) j["q"] = *c.q;
  if (c.kappa) j["kappa"] = *c.kappa;
  return j;
}

json info_json(const ExperimentReport& r) {
  json j;
  const Scheme scheme = r.config.scheme;
  if (scheme == Scheme::adaptive || scheme == Scheme::conventional) {
    j["k"] = r.info.k;
    j["m"] = r.info.m;
    j["alpha"] = r.info.alpha;
    j["beta"] = r.info.beta;
    j["verified"] = r.info.verified;
    j["attempts"] = r.info.attempts;
  } else {
    j["q"] = r.info.q;
    j["kappa"] = r.info.kappa;
    j["delta"] = r.info.delta;
    j["buckets_per_coord"] = r.info.buckets_per_coord;
    j["distance_hypothesis"] = r.info.distance_hypothesis;
  }
  j["round1_tests"] = r.info.round1_tests;
  j["round2_max"] = r.info.round2_max;
  j["total_tests"] = r.info.total_tests;
  return j;
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::adaptive: return "adaptive";
    case Scheme::nonadaptive: return "nonadaptive";
    case Scheme::conventional: return "conventional";
  }
  throw ParameterError("scheme_name: unknown scheme");
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  // Trip invalid gamma before any construction work.
  (void)tau_for_gamma(config.gamma);
  if (config.scheme == Scheme::nonadaptive) return run_nonadaptive_scheme(config);
  return run_expander_scheme(config);
}

std::string report_to_json(const ExperimentReport& report) {
  json j;
  j["config"] = config_json(report.config);
  j["scheme_info"] = info_json(report);
  json trials = json::array();
  for (const TrialRecord& t : report.trials) {
    json rec;
    json defectives = json::array();
    for (int v : t.defectives) defectives.push_back(v + 1);  // 1-based in reports
    rec["defectives"] = std::move(defectives);
    rec["round1_tests"] = t.round1_tests;
    rec["list_size"] = t.list_size;
    rec["round2_tests"] = t.round2_tests;
    rec["hamming_that_t"] = t.hamming_that_t;
    rec["success"] = t.success;
    rec["claims_ok"] = t.claims_ok;
    trials.push_back(std::move(rec));
  }
  j["trials"] = std::move(trials);

  json agg;
  agg["trial_count"] = report.trial_count;
  agg["success_count"] = report.success_count;
  agg["success_rate"] = report.success_rate;
  agg["max_list_size"] = report.max_list_size;
  agg["max_hamming_that_t"] = report.max_hamming_that_t;
  agg["hamming_slack"] = report.hamming_slack;
  agg["adaptive_lower_bound"] = report.adaptive_bound;
  agg["round1_ratio"] = report.round1_ratio;
  if (report.config.d >= 2) {
    agg["nonadaptive_lower_bound"] = report.nonadaptive_bound;
    agg["nonadaptive_ratio"] = report.nonadaptive_ratio;
  }
  agg["any_claim_failed"] = report.any_claim_failed;
  j["aggregates"] = std::move(agg);
  return j.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "trial,defectives,round1_tests,list_size,round2_tests,hamming_that_t,success,claims_ok\n";
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const TrialRecord& t = report.trials[i];
    out << i << ",\"";
    for (std::size_t j = 0; j < t.defectives.size(); ++j) {
      if (j) out << ' ';
      out << t.defectives[j] + 1;
    }
    out << "\"," << t.round1_tests << ',' << t.list_size << ',' << t.round2_tests << ','
        << t.hamming_that_t << ',' << (t.success ? 1 : 0) << ',' << (t.claims_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

GenResult gen_expander_files(int n, int d, int gamma, std::uint64_t seed, std::int64_t budget,
                             const std::string& prefix) {
  (void)tau_for_gamma(gamma);
  const VerifiedExpander ve =
      verified_random_expander(n, d, derive_seed(seed, kConstructionStream), budget);
  const TestMatrix B = to_binary_matrix(ve.graph);
  const MergedScheme scheme = build_merged(B, gamma);

  GenResult result;
  const std::string graph_path = prefix + ".graph";
  const std::string b_path = prefix + ".B.matrix";
  const std::string s1_path = prefix + ".s1.matrix";
  const std::string s2_path = prefix + ".s2.matrix";
  save_graph(graph_path, ve.graph);
  save_matrix(b_path, B, 2);
  save_matrix(s1_path, scheme.s1, scheme.tau);
  save_matrix(s2_path, scheme.s2, scheme.tau);
  result.files = {graph_path, b_path, s1_path, s2_path};

  json manifest;
  manifest["command"] = "gen-expander";
  manifest["n"] = n;
  manifest["d"] = d;
  manifest["gamma"] = gamma;
  manifest["seed"] = seed;
  manifest["k"] = ve.params.k;
  manifest["m"] = ve.params.m;
  manifest["alpha"] = ve.params.alpha;
  manifest["beta"] = ve.params.beta;
  manifest["verified"] = ve.verified;
  manifest["attempts"] = ve.attempts;
  manifest["tau"] = scheme.tau;
  manifest["round1_tests"] = 2 * static_cast<std::int64_t>(scheme.group_count);
  manifest["files"] = result.files;
  const std::string manifest_path = prefix + ".manifest.json";
  {
    std::ostringstream body;
    body << manifest.dump(2) << "\n";
    std::ofstream out(manifest_path);
    if (!out) throw InstanceError("cannot open file for writing: " + manifest_path);
    out << body.str();
  }
  result.files.push_back(manifest_path);
  return result;
}

GenResult gen_code_files(int n, int d, int gamma, std::optional<int> q, std::optional<int> kappa,
                         const std::string& prefix) {
  if (kappa && !q) throw ParameterError("gen_code_files: kappa override requires q");
  RsCode code;
  if (q) {
    int kap;
    if (kappa) {
      kap = *kappa;
    } else {
      kap = 1;
      std::int64_t p = *q;
      while (p < n) {
        p *= *q;
        ++kap;
      }
    }
    code = RsCode(*q, kap, n);
  } else {
    code = build_rs_code(n, d, gamma);
  }
  const BucketScheme scheme = build_bucket_scheme(code, gamma);

  GenResult result;
  const std::string code_path = prefix + ".code";
  const std::string s1_path = prefix + ".s1.matrix";
  const std::string s2_path = prefix + ".s2.matrix";
  save_code(code_path, code);
  save_matrix(s1_path, scheme.s1, scheme.tau);
  save_matrix(s2_path, scheme.s2, scheme.tau);
  result.files = {code_path, s1_path, s2_path};

  json manifest;
  manifest["command"] = "gen-code";
  manifest["n"] = n;
  manifest["d"] = d;
  manifest["gamma"] = gamma;
  manifest["q"] = code.q();
  manifest["kappa"] = code.kappa();
  manifest["delta"] = code.delta();
  manifest["buckets_per_coord"] = scheme.buckets_per_coord;
  manifest["distance_hypothesis"] = code_satisfies_distance_hypothesis(code, d);
  manifest["tau"] = scheme.tau;
  manifest["total_tests"] = nonadaptive_test_count(code, gamma);
  manifest["files"] = result.files;
  const std::string manifest_path = prefix + ".manifest.json";
  {
    std::ostringstream body;
    body << manifest.dump(2) << "\n";
    std::ofstream out(manifest_path);
    if (!out) throw InstanceError("cannot open file for writing: " + manifest_path);
    out << body.str();
  }
  result.files.push_back(manifest_path);
  return result;
}

}  // namespace sqgt
