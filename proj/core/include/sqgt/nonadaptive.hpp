#pragma once

// One-round scheme from a Reed-Solomon code: the PR binary indicator
// matrix, bucketed S1/S2 SQGT matrices, and the exclusion decoder.

#include <cstdint>
#include <optional>
#include <vector>

#include "sqgt/model.hpp"

namespace sqgt {

// Full-length evaluation Reed-Solomon code over GF(q), q an odd prime:
// codewords are degree-< kappa polynomials evaluated at 0..q-1, so the
// code is MDS with minimum distance q - kappa + 1 and contains the
// all-ones word (the constant polynomial 1).  Subject p in [0, n) maps to
// the polynomial whose coefficient vector is p written base q,
// least-significant coefficient first.
class RsCode {
 public:
  RsCode() = default;

  // Validates: q odd prime, 1 <= kappa <= q, 2 <= n <= q^kappa.
  // Throws ParameterError otherwise.
  RsCode(int q, int kappa, int n);

  int q() const { return q_; }
  int kappa() const { return kappa_; }
  int n() const { return n_; }
  int length() const { return q_; }  // L_c: full-length evaluation at 0..q-1

  // MDS minimum distance L_c - kappa + 1 and relative distance delta.
  int min_distance() const { return q_ - kappa_ + 1; }
  double delta() const { return static_cast<double>(min_distance()) / q_; }

  // Codeword of a subject, length q, values in [0, q).  Throws
  // InstanceError when subject is outside [0, n).
  std::vector<int> codeword(int subject) const;

  friend bool operator==(const RsCode&, const RsCode&) = default;

 private:
  int q_ = 0;
  int kappa_ = 0;
  int n_ = 0;
};

// Smallest odd prime q (with kappa = ceil(log_q n)) satisfying q^kappa >=
// n and the distance hypothesis delta > 1 - 1/(2d), i.e. 2d(kappa - 1) <
// q, both checked in exact integer arithmetic.  gamma is validated
// (>= 1) but does not constrain the search.  Throws ParameterError on
// invalid inputs; the bounded search failing is an internal error (a valid
// q always exists since kappa = 1 once q >= n).
RsCode build_rs_code(int n, int d, int gamma);

// Distance hypothesis delta > 1 - 1/(2d) in exact integer form:
// 2*d*(kappa - 1) < q.  Throws ParameterError when d < 1.
bool code_satisfies_distance_hypothesis(const RsCode& code, int d);

// (L_c * q) x n binary matrix; row (c, x) = c*q + x indicates the subjects
// whose codeword has value x at coordinate c.  Every column has weight
// exactly L_c.
TestMatrix pr_binary_matrix(const RsCode& code);

// Bucketed SQGT matrices: coordinate c splits its q values into
// buckets_per_coord = ceil(q / gamma) buckets; bucket r covers values
// [r*gamma, min((r+1)*gamma - 1, q - 1)].  Row (c, r) = c*buckets_per_coord + r.
struct BucketScheme {
  RsCode code;
  int gamma = 0;
  std::int64_t tau = 0;       // (4*gamma)^gamma
  int buckets_per_coord = 0;  // ceil(q / gamma)
  TestMatrix s1;  // entry ((c,r), j) = (4g)^(x_c - r*gamma) when x_c in bucket r, else 0
  TestMatrix s2;  // entry ((c,r), j) = 1 iff x_c in bucket r
  bool single_bucket = false;  // gamma >= q: allowed but flagged
};

// Throws ParameterError when gamma < 1.
BucketScheme build_bucket_scheme(const RsCode& code, int gamma);

// Per-value defective counts of one bucket, decoded from its S1 reading,
// or nullopt (SATURATED) when the companion S2 reading is >= 4*gamma.
// bucket_width is the number of values the bucket covers (gamma, or less
// for the last bucket).  Digits beyond bucket_width must be zero; a
// nonzero one means the readings cannot have come from this scheme and
// throws InstanceError (guards file-loaded data).  Note: at gamma = 1 the
// saturation gate cannot fire (4*gamma > tau - 1), so counts are exact
// only when the bucket holds at most tau - 1 defectives; zero/nonzero is
// always exact.
std::optional<std::vector<std::int64_t>> count_by_value(std::int64_t s1_reading,
                                                        std::int64_t s2_reading,
                                                        int bucket_width, int gamma);

// Exclusion decoder: subject j is excluded iff some coordinate c (bucket r
// containing x_c) has s2 reading <= 4*gamma - 1 and digit x_c - r*gamma of
// the s1 reading equal to 0.  Returns all non-excluded subjects.  Output
// is always a superset of the generating set; equality holds under the
// code's distance hypothesis.  Throws InstanceError on length mismatch.
DefectiveSet exclusion_decode(const BucketScheme& scheme, const OutcomeVector& s1_out,
                              const OutcomeVector& s2_out);

// All shifts y + i*1 (componentwise mod q) of the given codewords for
// i in {-gamma+1, ..., gamma-1}, deduplicated and sorted.  Used by the
// claim-verification property tests.
std::vector<std::vector<int>> shifted_defective_set(const std::vector<std::vector<int>>& codewords,
                                                    int q, int gamma);

// Total tests 2 * L_c * ceil(q / gamma).
std::int64_t nonadaptive_test_count(const RsCode& code, int gamma);

}  // namespace sqgt
