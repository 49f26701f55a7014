#include "sqgt/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sqgt {

MergedScheme build_merged(const TestMatrix& B, int gamma) {
  if (gamma < 1) throw ParameterError("build_merged: gamma must be >= 1");
  if (!B.is_binary()) throw InstanceError("build_merged: base matrix must be binary");
  const std::int64_t tau = tau_for_gamma(gamma);
  const int n = B.cols();
  const int padded_rows = (B.rows() + gamma - 1) / gamma * gamma;
  std::vector<std::int64_t> padded(static_cast<std::size_t>(padded_rows) * n, 0);
  std::copy(B.entries().begin(), B.entries().end(), padded.begin());

  const int groups = padded_rows / gamma;
  std::vector<std::int64_t> s1(static_cast<std::size_t>(groups) * n, 0);
  std::vector<std::int64_t> s2(static_cast<std::size_t>(groups) * n, 0);
  for (int i = 0; i < groups; ++i) {
    std::int64_t weight = 1;  // (4*gamma)^j
    for (int j = 0; j < gamma; ++j) {
      const std::size_t row = static_cast<std::size_t>(i) * gamma + j;
      for (int c = 0; c < n; ++c) {
        const std::int64_t e = padded[row * n + c];
        s1[static_cast<std::size_t>(i) * n + c] += weight * e;
        s2[static_cast<std::size_t>(i) * n + c] += e;
      }
      weight *= 4 * gamma;
    }
  }

  MergedScheme scheme;
  scheme.base = TestMatrix(padded_rows, n, std::move(padded));
  scheme.gamma = gamma;
  scheme.tau = tau;
  scheme.group_count = groups;
  scheme.s1 = TestMatrix(groups, n, std::move(s1));
  scheme.s2 = TestMatrix(groups, n, std::move(s2));
  return scheme;
}

DigitVector radix_expand(std::int64_t a, int gamma) {
  const std::int64_t tau = tau_for_gamma(gamma);  // validates gamma
  if (a < 0 || a >= tau)
    throw ParameterError("radix_expand: value outside [0, (4*gamma)^gamma - 1]");
  DigitVector digits(static_cast<std::size_t>(gamma));
  const std::int64_t base = 4 * static_cast<std::int64_t>(gamma);
  for (int j = 0; j < gamma; ++j) {
    digits[static_cast<std::size_t>(j)] = static_cast<int>(a % base);
    a /= base;
  }
  return digits;
}

OutcomeVector f_tau_to_b(const OutcomeVector& s1_outcome, int gamma) {
  const std::int64_t tau = tau_for_gamma(gamma);
  OutcomeVector bits;
  bits.reserve(s1_outcome.size() * static_cast<std::size_t>(gamma));
  const std::int64_t base = 4 * static_cast<std::int64_t>(gamma);
  for (std::int64_t reading : s1_outcome) {
    if (reading < 0 || reading >= tau)
      throw ParameterError("f_tau_to_b: reading outside [0, tau - 1]");
    for (int j = 0; j < gamma; ++j) {
      bits.push_back(reading % base > 0 ? 1 : 0);
      reading /= base;
    }
  }
  return bits;
}

OutcomeVector correct_with_s2(const OutcomeVector& t_hat, const OutcomeVector& s2_outcome,
                              int gamma) {
  if (gamma < 1) throw ParameterError("correct_with_s2: gamma must be >= 1");
  if (t_hat.size() != s2_outcome.size() * static_cast<std::size_t>(gamma))
    throw InstanceError("correct_with_s2: length mismatch between t_hat and s2 readings");
  OutcomeVector t_bar(t_hat);
  for (std::size_t j = 0; j < t_bar.size(); ++j)
    if (s2_outcome[j / static_cast<std::size_t>(gamma)] >= 4 * gamma) t_bar[j] = 1;
  return t_bar;
}

std::vector<int> recover_list(const OutcomeVector& t_bar, const TestMatrix& B) {
  if (t_bar.size() != static_cast<std::size_t>(B.rows()))
    throw InstanceError("recover_list: indicator length does not match row count");
  std::vector<int> list;
  for (int p = 0; p < B.cols(); ++p) {
    bool covered = true;
    for (int r = 0; r < B.rows() && covered; ++r)
      if (B.at(r, p) != 0 && t_bar[static_cast<std::size_t>(r)] == 0) covered = false;
    if (covered) list.push_back(p);
  }
  return list;
}

TwoRoundResult two_round_decode(const MergedScheme& scheme, const DefectiveSet& defectives,
                                int d, std::optional<std::int64_t> list_limit) {
  if (d < 1) throw ParameterError("two_round_decode: d must be >= 1");
  if (defectives.size() > d)
    throw InstanceError("two_round_decode: defective set larger than d");

  const OutcomeVector s1_out = simulate_outcomes(scheme.s1, defectives, scheme.tau);
  const OutcomeVector s2_out = simulate_outcomes(scheme.s2, defectives, scheme.tau);
  const OutcomeVector t_hat = f_tau_to_b(s1_out, scheme.gamma);
  const OutcomeVector t_bar = correct_with_s2(t_hat, s2_out, scheme.gamma);

  TwoRoundResult result;
  result.list = recover_list(t_bar, scheme.base);
  result.round1_tests = 2 * static_cast<std::int64_t>(scheme.group_count);
  result.round2_tests = static_cast<std::int64_t>(result.list.size());

  const std::int64_t limit =
      list_limit.value_or(std::max<std::int64_t>(2 * d + 2, d + (10 * d + 7) / 8));
  result.list_overflow = result.round2_tests > limit;

  // Round two: one individual membership test per candidate.
  std::vector<int> found;
  for (int p : result.list)
    if (defectives.contains(p)) found.push_back(p);
  result.decoded = DefectiveSet(std::move(found), scheme.base.cols());
  return result;
}

AdaptiveTestCount adaptive_test_count(int n, int d, int gamma) {
  if (gamma < 1) throw ParameterError("adaptive_test_count: gamma must be >= 1");
  if (d < 1 || n < 2 * d + 2) throw ParameterError("adaptive_test_count: need n >= 2d+2, d >= 1");
  const int group = 2 * d + 2;
  int k = 0;
  while ((std::int64_t{1} << k) * group < n) ++k;
  const std::int64_t m =
      static_cast<std::int64_t>(std::ceil(8.0 * std::numbers::e * std::numbers::e * k * group));
  AdaptiveTestCount count;
  count.round1 = 2 * ((m + gamma - 1) / gamma);
  count.round2_max = d + (10 * d + 7) / 8;  // d + ceil(10d/8)
  return count;
}

AdaptiveTestCount adaptive_test_count(const MergedScheme& scheme, int d) {
  if (d < 1) throw ParameterError("adaptive_test_count: d must be >= 1");
  AdaptiveTestCount count;
  count.round1 = 2 * static_cast<std::int64_t>(scheme.group_count);
  count.round2_max = d + (10 * d + 7) / 8;
  return count;
}

}  // namespace sqgt
