#pragma once

// Random left-regular bipartite expanders, exhaustive expansion
// verification, the unique-neighbor property, and the binary test matrix
// induced by a graph.  Left vertices are people, right vertices are tests.

#include <cstdint>
#include <span>
#include <vector>

#include "sqgt/model.hpp"

namespace sqgt {

// Left-regular bipartite graph: every left vertex has exactly k distinct
// right neighbors, stored sorted.  m_right may be zero only when k is zero
// (the degenerate alpha = 1 boundary).
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  // adjacency[v] must hold exactly k distinct indices in [0, m_right);
  // they are sorted on construction.  Violations throw ParameterError.
  BipartiteGraph(int n_left, int m_right, int k, std::vector<std::vector<int>> adjacency);

  int n_left() const { return n_left_; }
  int m_right() const { return m_right_; }
  int k() const { return k_; }
  std::span<const int> neighbors_of(int left) const {
    return {flat_.data() + static_cast<std::size_t>(left) * k_, static_cast<std::size_t>(k_)};
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  int n_left_ = 0;
  int m_right_ = 0;
  int k_ = 0;
  std::vector<int> flat_;  // row-major n_left x k
};

// N(P): sorted union of the adjacency lists of P.
std::vector<int> neighbors(const BipartiteGraph& g, std::span<const int> P);

// N_u(P): sorted set of right vertices adjacent to exactly one member of P.
std::vector<int> unique_neighbors(const BipartiteGraph& g, std::span<const int> P);

// Expansion parameters attached to a generated graph.  beta is recorded as
// 3k/4; the decoding lemmas additionally need strict > 3k/4 expansion,
// which verify_strict_expansion checks in exact integer arithmetic.
struct ExpanderParams {
  double alpha = 0;
  double beta = 0;
  int k = 0;
  int m = 0;
};

struct RandomExpander {
  BipartiteGraph graph;
  ExpanderParams params;
};

// Random left-regular graph with the concrete parameters
//   alpha = (2d+2)/n, k = smallest integer with 2^k * (2d+2) >= n,
//   m = ceil(8 e^2 k (2d+2)).
// Each left vertex's k neighbors are drawn uniformly without replacement;
// identical seeds give identical graphs.  Throws ParameterError when
// n < 2d+2 or m < k.
RandomExpander random_expander(int n, int d, std::uint64_t seed);

// Exhaustive check that every left subset P with |P| <= floor(alpha *
// n_left) has at least beta * |P| neighbors.  The subset search visits
// nodes of a pruned per-size DFS; exceeding `budget` visited nodes throws
// BudgetError (a refusal, distinct from returning false).  beta * |P| is
// compared exactly when beta is dyadic (e.g. 3k/4).
bool verify_expansion(const BipartiteGraph& g, double alpha, double beta,
                      std::int64_t budget = kDefaultWorkBudget);

// Strict variant used by the decoding guarantees: every subset P with
// 1 <= |P| <= max_subset_size must satisfy 4|N(P)| > 3k|P| (pure integer
// comparison, i.e. beta strictly above 3k/4).
bool verify_strict_expansion(const BipartiteGraph& g, int max_subset_size,
                             std::int64_t budget = kDefaultWorkBudget);

// Unique-neighbor inequality for one instance: |N_u(P u I) \ N(I)| >= k.
// Preconditions (ParameterError otherwise): P and I disjoint,
// |P| >= |I| + 2, |P u I| <= alpha * n_left.
bool check_unique_neighbor_lemma(const BipartiteGraph& g, std::span<const int> I,
                                 std::span<const int> P, int k, double alpha);

// m_right x n_left binary matrix with entry (i, j) = 1 iff right vertex i
// is adjacent to left vertex j.  Throws ParameterError when m_right = 0.
TestMatrix to_binary_matrix(const BipartiteGraph& g);

struct VerifiedExpander {
  BipartiteGraph graph;
  ExpanderParams params;
  bool verified = false;  // false when the budget ruled out exhaustive checking
  int attempts = 0;       // construction attempts consumed
};

// Resamples random_expander until verify_strict_expansion passes (subset
// sizes up to 2d+2).  If the very first verification refuses on budget,
// the graph is returned unverified (verified = false) for use at scales
// where exhaustive checking is infeasible.  Throws InstanceError when
// max_attempts graphs all fail verification.
VerifiedExpander verified_random_expander(int n, int d, std::uint64_t seed,
                                          std::int64_t budget = kDefaultWorkBudget,
                                          int max_attempts = 100);

}  // namespace sqgt
