#include "sqgt/nonadaptive.hpp"

#include <algorithm>

#include "sqgt/adaptive.hpp"  // radix_expand

namespace sqgt {
namespace {

bool is_odd_prime(int q) {
  if (q < 3 || q % 2 == 0) return false;
  for (int f = 3; static_cast<std::int64_t>(f) * f <= q; f += 2)
    if (q % f == 0) return false;
  return true;
}

// q^kappa >= n without overflow (clamps once past n).
bool power_at_least(int q, int kappa, int n) {
  std::int64_t p = 1;
  for (int i = 0; i < kappa; ++i) {
    p *= q;
    if (p >= n) return true;
  }
  return p >= n;
}

}  // namespace

RsCode::RsCode(int q, int kappa, int n) : q_(q), kappa_(kappa), n_(n) {
  if (!is_odd_prime(q)) throw ParameterError("RsCode: q must be an odd prime");
  if (kappa < 1 || kappa > q) throw ParameterError("RsCode: need 1 <= kappa <= q");
  if (n < 2) throw ParameterError("RsCode: need n >= 2");
  if (!power_at_least(q, kappa, n)) throw ParameterError("RsCode: q^kappa < n");
}

std::vector<int> RsCode::codeword(int subject) const {
  if (subject < 0 || subject >= n_)
    throw InstanceError("RsCode::codeword: subject outside [0, n)");
  // Coefficients of the message polynomial: subject written base q,
  // least-significant coefficient first.
  std::vector<int> coeff(static_cast<std::size_t>(kappa_));
  int rest = subject;
  for (int i = 0; i < kappa_; ++i) {
    coeff[static_cast<std::size_t>(i)] = rest % q_;
    rest /= q_;
  }
  std::vector<int> word(static_cast<std::size_t>(q_));
  for (int x = 0; x < q_; ++x) {
    // Horner evaluation mod q.
    std::int64_t acc = 0;
    for (int i = kappa_ - 1; i >= 0; --i) acc = (acc * x + coeff[static_cast<std::size_t>(i)]) % q_;
    word[static_cast<std::size_t>(x)] = static_cast<int>(acc);
  }
  return word;
}

RsCode build_rs_code(int n, int d, int gamma) {
  if (n < 2) throw ParameterError("build_rs_code: need n >= 2");
  if (d < 1) throw ParameterError("build_rs_code: need d >= 1");
  if (gamma < 1) throw ParameterError("build_rs_code: need gamma >= 1");
  // Smallest odd prime q whose kappa = ceil(log_q n) satisfies the
  // distance hypothesis 2d(kappa - 1) < q.  Once q >= n, kappa = 1 works,
  // so the search below always terminates.
  for (int q = 3; q <= std::max(n, 3) + 1000; ++q) {
    if (!is_odd_prime(q)) continue;
    int kappa = 1;
    std::int64_t p = q;
    while (p < n) {
      p *= q;
      ++kappa;
    }
    if (2LL * d * (kappa - 1) < q) return RsCode(q, kappa, n);
  }
  throw ParameterError("build_rs_code: bounded search found no valid prime");  // unreachable
}

bool code_satisfies_distance_hypothesis(const RsCode& code, int d) {
  if (d < 1) throw ParameterError("code_satisfies_distance_hypothesis: d must be >= 1");
  return 2LL * d * (code.kappa() - 1) < code.q();
}

TestMatrix pr_binary_matrix(const RsCode& code) {
  const int q = code.q();
  const int L = code.length();
  const int n = code.n();
  std::vector<std::int64_t> entries(static_cast<std::size_t>(L) * q * n, 0);
  for (int j = 0; j < n; ++j) {
    const std::vector<int> word = code.codeword(j);
    for (int c = 0; c < L; ++c) {
      const std::size_t row = static_cast<std::size_t>(c) * q + word[static_cast<std::size_t>(c)];
      entries[row * n + j] = 1;
    }
  }
  return TestMatrix(L * q, n, std::move(entries));
}

BucketScheme build_bucket_scheme(const RsCode& code, int gamma) {
  if (gamma < 1) throw ParameterError("build_bucket_scheme: gamma must be >= 1");
  const int q = code.q();
  const int L = code.length();
  const int n = code.n();
  const int bpc = (q + gamma - 1) / gamma;

  BucketScheme scheme;
  scheme.code = code;
  scheme.gamma = gamma;
  scheme.tau = tau_for_gamma(gamma);
  scheme.buckets_per_coord = bpc;
  scheme.single_bucket = gamma >= q;

  std::vector<std::int64_t> s1(static_cast<std::size_t>(L) * bpc * n, 0);
  std::vector<std::int64_t> s2(static_cast<std::size_t>(L) * bpc * n, 0);
  // Powers of 4*gamma up to gamma-1 (offsets within a bucket).
  std::vector<std::int64_t> pw(static_cast<std::size_t>(gamma), 1);
  for (int j = 1; j < gamma; ++j) pw[static_cast<std::size_t>(j)] = pw[static_cast<std::size_t>(j - 1)] * 4 * gamma;

  for (int j = 0; j < n; ++j) {
    const std::vector<int> word = code.codeword(j);
    for (int c = 0; c < L; ++c) {
      const int x = word[static_cast<std::size_t>(c)];
      const int r = x / gamma;
      const int offset = x - r * gamma;  // v' in [0, gamma)
      const std::size_t row = static_cast<std::size_t>(c) * bpc + r;
      s1[row * n + j] = pw[static_cast<std::size_t>(offset)];
      s2[row * n + j] = 1;
    }
  }
  scheme.s1 = TestMatrix(L * bpc, n, std::move(s1));
  scheme.s2 = TestMatrix(L * bpc, n, std::move(s2));
  return scheme;
}

std::optional<std::vector<std::int64_t>> count_by_value(std::int64_t s1_reading,
                                                        std::int64_t s2_reading,
                                                        int bucket_width, int gamma) {
  const std::int64_t tau = tau_for_gamma(gamma);
  if (s1_reading < 0 || s1_reading >= tau)
    throw ParameterError("count_by_value: s1 reading outside [0, tau - 1]");
  if (s2_reading < 0 || s2_reading >= tau)
    throw ParameterError("count_by_value: s2 reading outside [0, tau - 1]");
  if (bucket_width < 1 || bucket_width > gamma)
    throw ParameterError("count_by_value: bucket width outside [1, gamma]");
  if (s2_reading >= 4 * gamma) return std::nullopt;  // SATURATED
  const DigitVector digits = radix_expand(s1_reading, gamma);
  for (int j = bucket_width; j < gamma; ++j)
    if (digits[static_cast<std::size_t>(j)] != 0)
      throw InstanceError("count_by_value: nonzero digit beyond bucket width");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(bucket_width));
  for (int j = 0; j < bucket_width; ++j) counts[static_cast<std::size_t>(j)] = digits[static_cast<std::size_t>(j)];
  return counts;
}

DefectiveSet exclusion_decode(const BucketScheme& scheme, const OutcomeVector& s1_out,
                              const OutcomeVector& s2_out) {
  const int L = scheme.code.length();
  const int n = scheme.code.n();
  const int gamma = scheme.gamma;
  const int bpc = scheme.buckets_per_coord;
  const std::size_t rows = static_cast<std::size_t>(L) * bpc;
  if (s1_out.size() != rows || s2_out.size() != rows)
    throw InstanceError("exclusion_decode: outcome length does not match scheme");

  // Precompute per-row digit tables: digit v of the s1 reading, v < gamma.
  std::vector<int> digits(rows * static_cast<std::size_t>(gamma));
  const std::int64_t base = 4 * static_cast<std::int64_t>(gamma);
  for (std::size_t row = 0; row < rows; ++row) {
    std::int64_t reading = s1_out[row];
    if (reading < 0 || reading >= scheme.tau)
      throw InstanceError("exclusion_decode: s1 reading outside [0, tau - 1]");
    for (int v = 0; v < gamma; ++v) {
      digits[row * gamma + v] = static_cast<int>(reading % base);
      reading /= base;
    }
  }

  std::vector<int> kept;
  for (int j = 0; j < n; ++j) {
    const std::vector<int> word = scheme.code.codeword(j);
    bool excluded = false;
    for (int c = 0; c < L && !excluded; ++c) {
      const int x = word[static_cast<std::size_t>(c)];
      const int r = x / gamma;
      const std::size_t row = static_cast<std::size_t>(c) * bpc + r;
      if (s2_out[row] <= 4 * gamma - 1 && digits[row * gamma + (x - r * gamma)] == 0)
        excluded = true;
    }
    if (!excluded) kept.push_back(j);
  }
  return DefectiveSet(std::move(kept), n);
}

std::vector<std::vector<int>> shifted_defective_set(const std::vector<std::vector<int>>& codewords,
                                                    int q, int gamma) {
  if (gamma < 1) throw ParameterError("shifted_defective_set: gamma must be >= 1");
  if (q < 2) throw ParameterError("shifted_defective_set: q must be >= 2");
  std::vector<std::vector<int>> shifted;
  shifted.reserve(codewords.size() * static_cast<std::size_t>(2 * gamma - 1));
  for (const auto& y : codewords) {
    for (int i = -(gamma - 1); i <= gamma - 1; ++i) {
      std::vector<int> z(y.size());
      for (std::size_t c = 0; c < y.size(); ++c) {
        if (y[c] < 0 || y[c] >= q)
          throw InstanceError("shifted_defective_set: coordinate outside [0, q)");
        z[c] = static_cast<int>(((y[c] + i) % q + q) % q);
      }
      shifted.push_back(std::move(z));
    }
  }
  std::sort(shifted.begin(), shifted.end());
  shifted.erase(std::unique(shifted.begin(), shifted.end()), shifted.end());
  return shifted;
}

std::int64_t nonadaptive_test_count(const RsCode& code, int gamma) {
  if (gamma < 1) throw ParameterError("nonadaptive_test_count: gamma must be >= 1");
  const int bpc = (code.q() + gamma - 1) / gamma;
  return 2LL * code.length() * bpc;
}

}  // namespace sqgt
