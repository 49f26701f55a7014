#pragma once

// Core semiquantitative group testing (SQGT) model under the saturation
// channel: a test over a pool reads the sum of defective concentrations,
// clipped at tau - 1.  Everything here is exact integer arithmetic; the
// channel never touches floating point.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqgt {

// Invalid scheme/model parameters (n, d, gamma, tau, matrix shape, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structurally valid parameters applied to an instance that violates a
// precondition (defective set too large, index out of range, ...).
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bounded search refused to finish within its work budget.  Distinct from
// failure: the property was neither confirmed nor refuted.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Default work budget for exhaustive searches: number of elementary search
// nodes a verifier may visit before refusing.
inline constexpr std::int64_t kDefaultWorkBudget = std::int64_t{1} << 24;

using OutcomeVector = std::vector<std::int64_t>;

// Sorted, duplicate-free set of 0-based item indices drawn from [0, n).
class DefectiveSet {
 public:
  DefectiveSet() = default;

  // Sorts and validates; throws InstanceError on duplicates or items
  // outside [0, n).
  DefectiveSet(std::vector<int> items, int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(items_.size()); }
  bool empty() const { return items_.empty(); }
  bool contains(int item) const;

  const std::vector<int>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  friend bool operator==(const DefectiveSet&, const DefectiveSet&) = default;

 private:
  std::vector<int> items_;
  int n_ = 0;
};

// Immutable test matrix with nonnegative integer entries, row-major storage.
// Rows are tests, columns are items.
class TestMatrix {
 public:
  TestMatrix() = default;

  // Throws ParameterError if rows*cols != entries.size() or any entry < 0.
  TestMatrix(int rows, int cols, std::vector<std::int64_t> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::span<const std::int64_t> row(int r) const {
    return {entries_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  const std::vector<std::int64_t>& entries() const { return entries_; }

  // True when every entry is 0 or 1 (cached at construction).
  bool is_binary() const { return is_binary_; }

  friend bool operator==(const TestMatrix&, const TestMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> entries_;
  bool is_binary_ = true;
};

// Saturation threshold tau = (4*gamma)^gamma.  Exact; throws ParameterError
// if gamma < 1 or the power would overflow a signed 64-bit integer
// (gamma <= 11 is representable).
std::int64_t tau_for_gamma(int gamma);

// Model parameters bundled with their derived saturation threshold.
struct SqgtParams {
  int n = 0;        // number of items
  int d = 0;        // bound on the number of defectives
  int gamma = 0;    // quantization parameter
  std::int64_t tau = 0;  // saturation threshold (4*gamma)^gamma

  // Validates 1 <= d < n and gamma >= 1 and computes tau.
  static SqgtParams make(int n, int d, int gamma);
};

// Applies the saturation channel to each row of `tests`: the reading is
// min(sum of entries over defective columns, tau - 1).  Intermediate sums
// saturate instead of overflowing.  Throws ParameterError if tau < 2 and
// InstanceError if the defective set's universe does not match the matrix
// width.
OutcomeVector simulate_outcomes(const TestMatrix& tests, const DefectiveSet& defectives,
                                std::int64_t tau);

// Conventional group testing readout: 1 iff the pool hits the defective
// set.  Requires a binary matrix (InstanceError otherwise).  Equals
// simulate_outcomes with tau = 2.
OutcomeVector binary_outcome(const TestMatrix& tests, const DefectiveSet& defectives);

// Conventional consistency: true iff binary_outcome(tests, candidate) is
// dominated entrywise by `observed`.  Requires a binary matrix and an
// outcome vector of matching length (InstanceError otherwise).
bool is_consistent(const DefectiveSet& candidate, const TestMatrix& tests,
                   const OutcomeVector& observed);

// Counting lower bound on the number of adaptive SQGT tests:
//   (d / log2 tau) * log2(n / d).
// Throws ParameterError unless n > d >= 1 and tau >= 2.
double adaptive_lower_bound(int n, int d, std::int64_t tau);

// Asymptotic-order reference value for the nonadaptive test count:
//   d^2 / (log2 tau)^3 * log_d(n).
// Requires n > d >= 2 (d = 1 has no base-d logarithm; InstanceError) and
// tau >= 2 (ParameterError otherwise).
double nonadaptive_lower_bound(int n, int d, std::int64_t tau);

}  // namespace sqgt
