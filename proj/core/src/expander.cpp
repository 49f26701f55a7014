#include "sqgt/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>

#include "sqgt/random.hpp"

namespace sqgt {
namespace {

// Per-left-vertex neighbor bitmasks over ceil(m/64) words.
struct ColumnMasks {
  int words = 0;
  std::vector<std::uint64_t> bits;  // n_left x words

  explicit ColumnMasks(const BipartiteGraph& g)
      : words((g.m_right() + 63) / 64),
        bits(static_cast<std::size_t>(g.n_left()) * words, 0) {
    for (int v = 0; v < g.n_left(); ++v)
      for (int t : g.neighbors_of(v))
        bits[static_cast<std::size_t>(v) * words + t / 64] |= std::uint64_t{1} << (t % 64);
  }

  const std::uint64_t* of(int v) const { return bits.data() + static_cast<std::size_t>(v) * words; }
};

// Number of subsets of sizes 1..smax, clamped at `cap` to avoid overflow.
std::int64_t subset_space(int n, int smax, std::int64_t cap) {
  std::int64_t total = 0;
  std::int64_t binom = 1;
  for (int s = 1; s <= smax; ++s) {
    if (binom > cap / n) return cap + 1;  // next term alone would blow past cap
    binom = binom * (n - s + 1) / s;      // exact: C(n, s) is divisible stepwise
    total += binom;
    if (total > cap) return cap + 1;
  }
  return total;
}

// Exhaustive search for a subset P, |P| in [1, smax], with fewer than
// needed(|P|) neighbors.  Returns the lexicographically first violating
// subset found (searching sizes in increasing order), or nullopt when the
// property holds everywhere.  Visited DFS nodes are charged against
// `budget`; the raw subset space is pre-checked against 8x budget because
// pruning cannot plausibly close a larger gap.
template <typename NeededFn>
std::optional<std::vector<int>> find_expansion_violation(const BipartiteGraph& g, int smax,
                                                         NeededFn needed, std::int64_t budget) {
  const int n = g.n_left();
  const int k = g.k();
  smax = std::min(smax, n);
  if (smax <= 0) return std::nullopt;
  if (budget <= 0 || subset_space(n, smax, budget) > 8 * budget)
    throw BudgetError("expansion check: subset space exceeds work budget");

  const ColumnMasks masks(g);
  const int words = masks.words;
  std::vector<std::uint64_t> layer(static_cast<std::size_t>(smax + 1) * std::max(words, 1), 0);
  std::vector<int> prefix;
  std::int64_t visited = 0;

  for (int s = 1; s <= smax; ++s) {
    const std::int64_t need = needed(s);
    if (need <= 0) continue;
    if (static_cast<std::int64_t>(k) * s < need) {
      // No size-s subset can reach the threshold; any witness will do.
      std::vector<int> w(static_cast<std::size_t>(s));
      for (int i = 0; i < s; ++i) w[static_cast<std::size_t>(i)] = i;
      return w;
    }

    prefix.clear();
    // DFS over ascending vertices; depth = |prefix|.
    auto dfs = [&](auto&& self, int depth, int start, std::int64_t count) -> std::optional<std::vector<int>> {
      const std::uint64_t* parent = layer.data() + static_cast<std::size_t>(depth) * words;
      for (int v = start; v <= n - (s - depth); ++v) {
        if (++visited > budget) throw BudgetError("expansion check: work budget exceeded");
        std::uint64_t* mine = layer.data() + static_cast<std::size_t>(depth + 1) * words;
        const std::uint64_t* col = masks.of(v);
        std::int64_t cnt = 0;
        for (int w = 0; w < words; ++w) {
          mine[w] = parent[w] | col[w];
          cnt += std::popcount(mine[w]);
        }
        if (depth + 1 == s) {
          if (cnt < need) {
            prefix.push_back(v);
            return prefix;
          }
          continue;
        }
        if (cnt >= need) continue;  // every extension already satisfies size s
        if (cnt + static_cast<std::int64_t>(k) * (s - depth - 1) < need) {
          // No extension can recover; materialize one violating subset.
          prefix.push_back(v);
          std::vector<int> w(prefix);
          for (int u = v + 1; static_cast<int>(w.size()) < s; ++u) w.push_back(u);
          return w;
        }
        prefix.push_back(v);
        if (auto hit = self(self, depth + 1, v + 1, cnt)) return hit;
        prefix.pop_back();
      }
      return std::nullopt;
    };
    std::fill_n(layer.begin(), words, 0);
    if (auto hit = dfs(dfs, 0, 0, 0)) return hit;
  }
  return std::nullopt;
}

}  // namespace

BipartiteGraph::BipartiteGraph(int n_left, int m_right, int k,
                               std::vector<std::vector<int>> adjacency)
    : n_left_(n_left), m_right_(m_right), k_(k) {
  if (n_left <= 0) throw ParameterError("BipartiteGraph: n_left must be positive");
  if (m_right < 0 || k < 0) throw ParameterError("BipartiteGraph: negative dimension");
  if (k > 0 && m_right < k)
    throw ParameterError("BipartiteGraph: degree exceeds right-side size");
  if (adjacency.size() != static_cast<std::size_t>(n_left))
    throw ParameterError("BipartiteGraph: adjacency size does not match n_left");
  flat_.reserve(static_cast<std::size_t>(n_left) * k);
  for (auto& adj : adjacency) {
    if (adj.size() != static_cast<std::size_t>(k))
      throw ParameterError("BipartiteGraph: left vertex degree is not k");
    std::sort(adj.begin(), adj.end());
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (adj[i] < 0 || adj[i] >= m_right)
        throw ParameterError("BipartiteGraph: neighbor index out of range");
      if (i > 0 && adj[i] == adj[i - 1])
        throw ParameterError("BipartiteGraph: duplicate neighbor");
      flat_.push_back(adj[i]);
    }
  }
}

std::vector<int> neighbors(const BipartiteGraph& g, std::span<const int> P) {
  std::vector<int> all;
  all.reserve(P.size() * static_cast<std::size_t>(g.k()));
  for (int v : P) {
    auto adj = g.neighbors_of(v);
    all.insert(all.end(), adj.begin(), adj.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::vector<int> unique_neighbors(const BipartiteGraph& g, std::span<const int> P) {
  std::vector<int> all;
  all.reserve(P.size() * static_cast<std::size_t>(g.k()));
  for (int v : P) {
    auto adj = g.neighbors_of(v);
    all.insert(all.end(), adj.begin(), adj.end());
  }
  std::sort(all.begin(), all.end());
  // Per-vertex adjacency lists are duplicate-free, so multiplicity in
  // `all` equals the number of adjacent members of P.
  std::vector<int> unique;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    if (j - i == 1) unique.push_back(all[i]);
    i = j;
  }
  return unique;
}

RandomExpander random_expander(int n, int d, std::uint64_t seed) {
  if (d < 1) throw ParameterError("random_expander: d must be >= 1");
  if (n < 2 * d + 2) throw ParameterError("random_expander: need n >= 2d+2");
  const int group = 2 * d + 2;
  // Smallest k with 2^k * (2d+2) >= n, i.e. k = ceil(log2(1/alpha)).
  int k = 0;
  while ((std::int64_t{1} << k) * group < n) ++k;
  const int m = static_cast<int>(std::ceil(8.0 * std::numbers::e * std::numbers::e * k * group));
  if (m < k) throw ParameterError("random_expander: m < k");

  std::mt19937_64 rng(splitmix64(seed));
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
  for (auto& adj : adjacency) {
    adj.reserve(static_cast<std::size_t>(k));
    while (static_cast<int>(adj.size()) < k) {
      const int t = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(m)));
      if (std::find(adj.begin(), adj.end(), t) == adj.end()) adj.push_back(t);
    }
  }
  ExpanderParams params;
  params.alpha = static_cast<double>(group) / n;
  params.k = k;
  params.beta = 3.0 * k / 4.0;
  params.m = m;
  return {BipartiteGraph(n, m, k, std::move(adjacency)), params};
}

bool verify_expansion(const BipartiteGraph& g, double alpha, double beta, std::int64_t budget) {
  if (alpha <= 0 || alpha > 1) throw ParameterError("verify_expansion: alpha outside (0, 1]");
  if (beta < 0) throw ParameterError("verify_expansion: negative beta");
  const int smax = static_cast<int>(std::floor(alpha * g.n_left() + 1e-9));
  const auto needed = [beta](int s) {
    return static_cast<std::int64_t>(std::ceil(beta * s - 1e-9));
  };
  return !find_expansion_violation(g, smax, needed, budget).has_value();
}

bool verify_strict_expansion(const BipartiteGraph& g, int max_subset_size, std::int64_t budget) {
  if (max_subset_size < 0) throw ParameterError("verify_strict_expansion: negative subset size");
  const int k = g.k();
  // count > 3ks/4 in exact integers: count >= floor(3ks/4) + 1.
  const auto needed = [k](int s) { return (3LL * k * s) / 4 + 1; };
  return !find_expansion_violation(g, max_subset_size, needed, budget).has_value();
}

bool check_unique_neighbor_lemma(const BipartiteGraph& g, std::span<const int> I,
                                 std::span<const int> P, int k, double alpha) {
  std::vector<int> sorted_i(I.begin(), I.end());
  std::vector<int> sorted_p(P.begin(), P.end());
  std::sort(sorted_i.begin(), sorted_i.end());
  std::sort(sorted_p.begin(), sorted_p.end());
  std::vector<int> common;
  std::set_intersection(sorted_i.begin(), sorted_i.end(), sorted_p.begin(), sorted_p.end(),
                        std::back_inserter(common));
  if (!common.empty()) throw ParameterError("check_unique_neighbor_lemma: P and I intersect");
  if (P.size() < I.size() + 2)
    throw ParameterError("check_unique_neighbor_lemma: need |P| >= |I| + 2");
  std::vector<int> both(sorted_i);
  both.insert(both.end(), sorted_p.begin(), sorted_p.end());
  if (static_cast<double>(both.size()) > alpha * g.n_left() + 1e-9)
    throw ParameterError("check_unique_neighbor_lemma: |P u I| exceeds alpha * n");

  const std::vector<int> nu = unique_neighbors(g, both);
  const std::vector<int> ni = neighbors(g, sorted_i);
  std::vector<int> diff;
  std::set_difference(nu.begin(), nu.end(), ni.begin(), ni.end(), std::back_inserter(diff));
  return static_cast<int>(diff.size()) >= k;
}

TestMatrix to_binary_matrix(const BipartiteGraph& g) {
  if (g.m_right() == 0)
    throw ParameterError("to_binary_matrix: graph has no right vertices");
  std::vector<std::int64_t> entries(static_cast<std::size_t>(g.m_right()) * g.n_left(), 0);
  for (int v = 0; v < g.n_left(); ++v)
    for (int t : g.neighbors_of(v))
      entries[static_cast<std::size_t>(t) * g.n_left() + v] = 1;
  return TestMatrix(g.m_right(), g.n_left(), std::move(entries));
}

VerifiedExpander verified_random_expander(int n, int d, std::uint64_t seed, std::int64_t budget,
                                          int max_attempts) {
  if (max_attempts < 1) throw ParameterError("verified_random_expander: max_attempts < 1");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    RandomExpander cand = random_expander(n, d, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    try {
      if (verify_strict_expansion(cand.graph, 2 * d + 2, budget))
        return {std::move(cand.graph), cand.params, true, attempt + 1};
    } catch (const BudgetError&) {
      // Exhaustive verification infeasible at this scale: hand back the
      // graph unverified so callers can proceed probabilistically.
      return {std::move(cand.graph), cand.params, false, attempt + 1};
    }
  }
  throw InstanceError("verified_random_expander: no graph passed verification within attempt limit");
}

}  // namespace sqgt
