#pragma once

// Brute-force ground truth, implementation-independent of the decoders it
// certifies: every check below recomputes outcomes, digit expansions, and
// candidate lists with its own loops directly from definitions.  All
// searches take an explicit work budget; exceeding it throws BudgetError
// (a refusal, never a verdict).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sqgt/adaptive.hpp"
#include "sqgt/model.hpp"
#include "sqgt/nonadaptive.hpp"

namespace sqgt {

// All sets I' with |I'| <= d and simulate_outcomes(matrix, I', tau) ==
// observed, in lexicographic order.  The search prunes supersets of any
// candidate whose (saturating) partial outcome already exceeds `observed`
// somewhere; the budget counts visited search nodes.
std::vector<DefectiveSet> enumerate_consistent(const TestMatrix& matrix, std::int64_t tau,
                                               const OutcomeVector& observed, int d,
                                               std::int64_t budget = kDefaultWorkBudget);

struct DisjunctReport {
  int d = 0;
  bool holds = false;
  // Violating pair: defective set I and a column outside I whose support
  // is covered by t_I.  Present iff holds == false.
  std::optional<std::pair<std::vector<int>, int>> witness;
};

// Exhaustive d-disjunctness: no outcome support of a set |I| <= d covers a
// column outside I.  Requires a binary matrix (InstanceError otherwise).
DisjunctReport check_d_disjunct(const TestMatrix& B, int d,
                                std::int64_t budget = kDefaultWorkBudget);

struct ListDisjunctReport {
  int d = 0;
  int ell = 0;
  bool holds = false;
  // Violating pair (I, L) with |L| > d + ell.  Present iff holds == false.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
};

// Exhaustive (d, ell)-list-disjunctness: for every |I| <= d, the maximal
// consistent list {p : support(col p) subset of support(t_I)} has size at
// most d + ell.  (d, 0) coincides with d-disjunctness.
ListDisjunctReport check_list_disjunct(const TestMatrix& B, int d, int ell,
                                       std::int64_t budget = kDefaultWorkBudget);

struct AdaptiveClaimReport {
  bool hamming_ok = false;    // 4*d_H(t_hat, t) <= d*k and 4*d_H(t_bar, t) <= d*k
  bool monotone_ok = false;   // t_bar >= t entrywise
  bool listsize_ok = false;   // |L| <= d + ceil(10d/8)
  bool digitexact_ok = false; // unsaturated groups decode exact per-row counts
  std::int64_t hamming_that_t = 0;  // d_H(t_hat, t)
  std::int64_t hamming_tbar_t = 0;  // d_H(t_bar, t)
  std::int64_t list_size = 0;
  int k = 0;  // recomputed column weight of the base matrix

  bool all_ok() const { return hamming_ok && monotone_ok && listsize_ok && digitexact_ok; }
};

// Recomputes t, t_hat, t_bar, and the maximal consistent list from the
// base matrix and I alone (per-row defective counts, saturating sums, own
// div/mod digit loop) and evaluates each claim.  The base matrix must have
// uniform column weight (InstanceError otherwise); |I| must be <= d.
AdaptiveClaimReport verify_adaptive_claims(const MergedScheme& scheme, const DefectiveSet& I,
                                           int d);

struct NonadaptiveClaimReport {
  bool soundness_ok = false;   // decoded set contains I
  bool halfcoords_ok = false;  // agreement coords <= d*(kappa-1) and < L_c/2 per x not in I
  bool markov_ok = false;      // >= L_c/2 readable coords (shifted-count < 4*gamma) per x not in I
  bool unique_ok = false;      // decoded set equals I
  std::int64_t decoded_size = 0;
  std::int64_t max_agree_coords = 0;

  bool all_ok() const { return soundness_ok && halfcoords_ok && markov_ok && unique_ok; }
};

// Recomputes bucket readings from codewords and I, applies the exclusion
// rule independently, and checks the distance-counting steps behind the
// uniqueness proof.  |I| must be <= d (InstanceError otherwise).
NonadaptiveClaimReport verify_nonadaptive_claims(const BucketScheme& scheme,
                                                 const DefectiveSet& I, int d);

// Exhaustive minimum pairwise Hamming distance over all q^kappa codewords.
// The budget counts (pair, coordinate) comparisons; infeasible sizes throw
// BudgetError.
int code_min_distance(const RsCode& code, std::int64_t budget = kDefaultWorkBudget);

}  // namespace sqgt
