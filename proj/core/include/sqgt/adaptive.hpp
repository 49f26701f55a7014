#pragma once

// Two-round adaptive scheme: merge gamma consecutive rows of a binary
// matrix B into one radix-weighted SQGT test (S1) plus one plain group-sum
// test (S2), decode round-one readings back to an inflated indicator
// vector, recover a candidate list, and finish with individual tests.

#include <cstdint>
#include <optional>
#include <vector>

#include "sqgt/model.hpp"

namespace sqgt {

// Little-endian base-(4*gamma) digit vector of length gamma.
using DigitVector = std::vector<int>;

// Merged test matrices built from a binary base matrix.  If gamma does not
// divide B's row count, B is padded with all-zero rows (they read zero and
// never affect decoding).
struct MergedScheme {
  TestMatrix base;      // padded B, rows a multiple of gamma
  int gamma = 0;
  std::int64_t tau = 0;  // (4*gamma)^gamma
  int group_count = 0;   // rows of s1 and of s2
  TestMatrix s1;         // row i = sum_j (4g)^j * B-row (i*g + j)
  TestMatrix s2;         // row i = plain sum of the same gamma rows
};

// Builds the merged scheme.  Throws ParameterError when gamma < 1 and
// InstanceError when B is not binary.
MergedScheme build_merged(const TestMatrix& B, int gamma);

// Digits of a in base 4*gamma, least significant first, length gamma.
// Throws ParameterError unless 0 <= a <= (4*gamma)^gamma - 1.
DigitVector radix_expand(std::int64_t a, int gamma);

// Expands every S1 reading into gamma digits and maps each digit to its
// nonzero indicator; output length = gamma * s1_outcome.size().
// Throws ParameterError when a reading is outside [0, tau - 1].
OutcomeVector f_tau_to_b(const OutcomeVector& s1_outcome, int gamma);

// Inflation step: position j of the output is forced to 1 when its group's
// S2 reading is >= 4*gamma, and keeps t_hat[j] otherwise.  Group of j is
// j / gamma.  Throws InstanceError when t_hat.size() != gamma *
// s2_outcome.size().  At gamma = 1 the threshold 4 exceeds the maximal
// reading 3, so the correction never fires.
OutcomeVector correct_with_s2(const OutcomeVector& t_hat, const OutcomeVector& s2_outcome,
                              int gamma);

// Candidate list {p : support(column p of B) is contained in
// support(t_bar)}, ascending.  Equivalent to greedily keeping p whenever
// {p} is consistent with t_bar, because set consistency is the conjunction
// of singleton consistency.  Throws InstanceError on length mismatch.
std::vector<int> recover_list(const OutcomeVector& t_bar, const TestMatrix& B);

struct TwoRoundResult {
  DefectiveSet decoded;
  std::vector<int> list;        // round-one candidate list L
  std::int64_t round1_tests = 0;  // 2 * group_count
  std::int64_t round2_tests = 0;  // |L|
  bool list_overflow = false;   // |L| exceeded list_limit: scheme failure flag
};

// Runs round one on the merged scheme (readings of s1 and s2 under tau),
// decodes the candidate list, then resolves each candidate with an
// individual membership test against `defectives`.  `list_limit` defaults
// to max(2d + 2, d + ceil(10 d / 8)); exceeding it sets list_overflow but
// neither truncates the list nor skips round two.  Throws InstanceError
// when |defectives| > d.
TwoRoundResult two_round_decode(const MergedScheme& scheme, const DefectiveSet& defectives,
                                int d, std::optional<std::int64_t> list_limit = std::nullopt);

struct AdaptiveTestCount {
  std::int64_t round1 = 0;      // 2 * ceil(m / gamma)
  std::int64_t round2_max = 0;  // d + ceil(10 d / 8)
};

// Test counts from the concrete construction: m = ceil(8 e^2 k (2d+2))
// with k as in random_expander.  Throws ParameterError on invalid (n, d,
// gamma).
AdaptiveTestCount adaptive_test_count(int n, int d, int gamma);

// Same accounting for an already-built scheme (round1 = 2 * group_count).
AdaptiveTestCount adaptive_test_count(const MergedScheme& scheme, int d);

}  // namespace sqgt
