#include "sqgt/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sqgt {

DefectiveSet::DefectiveSet(std::vector<int> items, int n) : items_(std::move(items)), n_(n) {
  if (n <= 0) throw InstanceError("DefectiveSet: population size must be positive");
  std::sort(items_.begin(), items_.end());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i] < 0 || items_[i] >= n)
      throw InstanceError("DefectiveSet: item " + std::to_string(items_[i]) +
                          " outside [0, " + std::to_string(n) + ")");
    if (i > 0 && items_[i] == items_[i - 1])
      throw InstanceError("DefectiveSet: duplicate item " + std::to_string(items_[i]));
  }
}

bool DefectiveSet::contains(int item) const {
  return std::binary_search(items_.begin(), items_.end(), item);
}

TestMatrix::TestMatrix(int rows, int cols, std::vector<std::int64_t> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows <= 0 || cols <= 0)
    throw ParameterError("TestMatrix: dimensions must be positive");
  if (entries_.size() != static_cast<std::size_t>(rows) * cols)
    throw ParameterError("TestMatrix: entry count does not match dimensions");
  for (std::int64_t e : entries_) {
    if (e < 0) throw ParameterError("TestMatrix: negative entry");
    if (e > 1) is_binary_ = false;
  }
}

std::int64_t tau_for_gamma(int gamma) {
  if (gamma < 1) throw ParameterError("tau_for_gamma: gamma must be >= 1");
  const std::int64_t base = 4 * static_cast<std::int64_t>(gamma);
  std::int64_t tau = 1;
  for (int i = 0; i < gamma; ++i) {
    if (tau > std::numeric_limits<std::int64_t>::max() / base)
      throw ParameterError("tau_for_gamma: (4*gamma)^gamma overflows 64-bit range");
    tau *= base;
  }
  return tau;
}

SqgtParams SqgtParams::make(int n, int d, int gamma) {
  if (d < 1 || d >= n) throw ParameterError("SqgtParams: need 1 <= d < n");
  SqgtParams p;
  p.n = n;
  p.d = d;
  p.gamma = gamma;
  p.tau = tau_for_gamma(gamma);  // validates gamma
  return p;
}

OutcomeVector simulate_outcomes(const TestMatrix& tests, const DefectiveSet& defectives,
                                std::int64_t tau) {
  if (tau < 2) throw ParameterError("simulate_outcomes: tau must be >= 2");
  if (!defectives.empty() && defectives.n() != tests.cols())
    throw InstanceError("simulate_outcomes: defective universe does not match matrix width");
  const std::int64_t cap = tau - 1;
  OutcomeVector out(static_cast<std::size_t>(tests.rows()), 0);
  for (int r = 0; r < tests.rows(); ++r) {
    auto row = tests.row(r);
    std::int64_t sum = 0;
    for (int j : defectives) {
      sum += row[static_cast<std::size_t>(j)];
      if (sum >= cap) {  // saturate early; also prevents overflow
        sum = cap;
        break;
      }
    }
    out[static_cast<std::size_t>(r)] = sum;
  }
  return out;
}

OutcomeVector binary_outcome(const TestMatrix& tests, const DefectiveSet& defectives) {
  if (!tests.is_binary()) throw InstanceError("binary_outcome: matrix is not binary");
  return simulate_outcomes(tests, defectives, 2);
}

bool is_consistent(const DefectiveSet& candidate, const TestMatrix& tests,
                   const OutcomeVector& observed) {
  if (!tests.is_binary()) throw InstanceError("is_consistent: matrix is not binary");
  if (observed.size() != static_cast<std::size_t>(tests.rows()))
    throw InstanceError("is_consistent: outcome length does not match test count");
  const OutcomeVector t = binary_outcome(tests, candidate);
  for (std::size_t l = 0; l < t.size(); ++l)
    if (t[l] > observed[l]) return false;
  return true;
}

double adaptive_lower_bound(int n, int d, std::int64_t tau) {
  if (d < 1 || d >= n) throw ParameterError("adaptive_lower_bound: need 1 <= d < n");
  if (tau < 2) throw ParameterError("adaptive_lower_bound: need tau >= 2");
  return static_cast<double>(d) / std::log2(static_cast<double>(tau)) *
         std::log2(static_cast<double>(n) / d);
}

double nonadaptive_lower_bound(int n, int d, std::int64_t tau) {
  if (d == 1) throw InstanceError("nonadaptive_lower_bound: d = 1 has no base-d logarithm");
  if (d < 2 || d >= n) throw ParameterError("nonadaptive_lower_bound: need 2 <= d < n");
  if (tau < 2) throw ParameterError("nonadaptive_lower_bound: need tau >= 2");
  const double log_tau = std::log2(static_cast<double>(tau));
  const double log_d_n = std::log2(static_cast<double>(n)) / std::log2(static_cast<double>(d));
  return static_cast<double>(d) * d / (log_tau * log_tau * log_tau) * log_d_n;
}

}  // namespace sqgt
