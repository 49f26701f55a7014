#include "sqgt/oracle.hpp"

#include <algorithm>
#include <bit>

namespace sqgt {
namespace {

// min(a + e, cap) that cannot overflow for a <= cap < 2^62.
std::int64_t saturating_add(std::int64_t a, std::int64_t e, std::int64_t cap) {
  if (e >= cap) return cap;
  return std::min(a + e, cap);
}

// Row-support bitmasks of a binary matrix's columns.
struct SupportMasks {
  int words;
  std::vector<std::uint64_t> bits;  // cols x words

  explicit SupportMasks(const TestMatrix& B)
      : words((B.rows() + 63) / 64),
        bits(static_cast<std::size_t>(B.cols()) * words, 0) {
    for (int r = 0; r < B.rows(); ++r)
      for (int c = 0; c < B.cols(); ++c)
        if (B.at(r, c) != 0)
          bits[static_cast<std::size_t>(c) * words + r / 64] |= std::uint64_t{1} << (r % 64);
  }

  const std::uint64_t* of(int c) const { return bits.data() + static_cast<std::size_t>(c) * words; }

  bool covered(int c, const std::uint64_t* supp) const {
    const std::uint64_t* col = of(c);
    for (int w = 0; w < words; ++w)
      if (col[w] & ~supp[w]) return false;
    return true;
  }
};

// Enumerates every I with |I| <= d in lexicographic order, passing the
// members and the OR of their column supports to `visit`; stops early when
// visit returns true.  The budget counts enumerated subsets.
template <typename Visit>
void enumerate_supports(const TestMatrix& B, const SupportMasks& masks, int d,
                        std::int64_t budget, Visit&& visit) {
  const int n = B.cols();
  const int words = masks.words;
  std::vector<std::uint64_t> layer(static_cast<std::size_t>(d + 1) * std::max(words, 1), 0);
  std::vector<int> items;
  std::int64_t visited = 0;

  auto dfs = [&](auto&& self, int depth, int start) -> bool {
    if (++visited > budget) throw BudgetError("subset enumeration: work budget exceeded");
    const std::uint64_t* supp = layer.data() + static_cast<std::size_t>(depth) * words;
    if (visit(items, supp)) return true;
    if (depth == d) return false;
    for (int v = start; v < n; ++v) {
      std::uint64_t* child = layer.data() + static_cast<std::size_t>(depth + 1) * words;
      const std::uint64_t* col = masks.of(v);
      for (int w = 0; w < words; ++w) child[w] = supp[w] | col[w];
      items.push_back(v);
      if (self(self, depth + 1, v + 1)) return true;
      items.pop_back();
    }
    return false;
  };
  dfs(dfs, 0, 0);
}

// tau = (4*gamma)^gamma recomputed locally (the oracle trusts nothing
// precomputed on the scheme object).
std::int64_t own_tau(int gamma) {
  std::int64_t t = 1;
  for (int i = 0; i < gamma; ++i) t *= 4 * static_cast<std::int64_t>(gamma);
  return t;
}

}  // namespace

std::vector<DefectiveSet> enumerate_consistent(const TestMatrix& matrix, std::int64_t tau,
                                               const OutcomeVector& observed, int d,
                                               std::int64_t budget) {
  if (tau < 2) throw ParameterError("enumerate_consistent: tau must be >= 2");
  if (d < 0) throw ParameterError("enumerate_consistent: d must be >= 0");
  if (observed.size() != static_cast<std::size_t>(matrix.rows()))
    throw InstanceError("enumerate_consistent: outcome length does not match matrix");
  const int n = matrix.cols();
  const int m = matrix.rows();
  const std::int64_t cap = tau - 1;

  std::vector<DefectiveSet> hits;
  // sums per DFS level, clamped at cap (clamping commutes with extension).
  std::vector<std::int64_t> sums(static_cast<std::size_t>(d + 1) * m, 0);
  std::vector<int> items;
  std::int64_t visited = 0;

  auto dfs = [&](auto&& self, int depth, int start) -> void {
    if (++visited > budget) throw BudgetError("enumerate_consistent: work budget exceeded");
    const std::int64_t* my = sums.data() + static_cast<std::size_t>(depth) * m;
    bool equal = true;
    for (int r = 0; r < m && equal; ++r)
      if (my[r] != observed[static_cast<std::size_t>(r)]) equal = false;
    if (equal) hits.emplace_back(items, n);
    if (depth == d) return;
    for (int v = start; v < n; ++v) {
      std::int64_t* child = sums.data() + static_cast<std::size_t>(depth + 1) * m;
      bool feasible = true;
      for (int r = 0; r < m; ++r) {
        child[r] = saturating_add(my[r], matrix.at(r, v), cap);
        if (child[r] > observed[static_cast<std::size_t>(r)]) feasible = false;
      }
      // Clamped sums only grow along extensions, so an overshoot anywhere
      // rules out the whole subtree.
      if (!feasible) continue;
      items.push_back(v);
      self(self, depth + 1, v + 1);
      items.pop_back();
    }
  };
  dfs(dfs, 0, 0);
  return hits;
}

DisjunctReport check_d_disjunct(const TestMatrix& B, int d, std::int64_t budget) {
  if (!B.is_binary()) throw InstanceError("check_d_disjunct: matrix must be binary");
  if (d < 0) throw ParameterError("check_d_disjunct: d must be >= 0");
  const SupportMasks masks(B);
  DisjunctReport report;
  report.d = d;
  report.holds = true;
  enumerate_supports(B, masks, d, budget, [&](const std::vector<int>& items,
                                              const std::uint64_t* supp) {
    for (int p = 0; p < B.cols(); ++p) {
      if (std::binary_search(items.begin(), items.end(), p)) continue;
      if (masks.covered(p, supp)) {
        report.holds = false;
        report.witness = {items, p};
        return true;
      }
    }
    return false;
  });
  return report;
}

ListDisjunctReport check_list_disjunct(const TestMatrix& B, int d, int ell, std::int64_t budget) {
  if (!B.is_binary()) throw InstanceError("check_list_disjunct: matrix must be binary");
  if (d < 0 || ell < 0) throw ParameterError("check_list_disjunct: d and ell must be >= 0");
  const SupportMasks masks(B);
  ListDisjunctReport report;
  report.d = d;
  report.ell = ell;
  report.holds = true;
  enumerate_supports(B, masks, d, budget, [&](const std::vector<int>& items,
                                              const std::uint64_t* supp) {
    std::vector<int> list;
    for (int p = 0; p < B.cols(); ++p)
      if (masks.covered(p, supp)) list.push_back(p);
    if (static_cast<int>(list.size()) > d + ell) {
      report.holds = false;
      report.witness = {items, std::move(list)};
      return true;
    }
    return false;
  });
  return report;
}

AdaptiveClaimReport verify_adaptive_claims(const MergedScheme& scheme, const DefectiveSet& I,
                                           int d) {
  if (d < 1) throw ParameterError("verify_adaptive_claims: d must be >= 1");
  if (I.size() > d) throw InstanceError("verify_adaptive_claims: |I| exceeds d");
  const TestMatrix& B = scheme.base;
  const int gamma = scheme.gamma;
  const int m = B.rows();
  const int n = B.cols();
  const std::int64_t tau = own_tau(gamma);
  const std::int64_t cap = tau - 1;

  // Column weight k (must be uniform for the claims to be meaningful).
  std::int64_t k = 0;
  for (int r = 0; r < m; ++r) k += B.at(r, 0);
  for (int c = 1; c < n; ++c) {
    std::int64_t w = 0;
    for (int r = 0; r < m; ++r) w += B.at(r, c);
    if (w != k) throw InstanceError("verify_adaptive_claims: column weights are not uniform");
  }

  // Per-row defective counts and the true indicator t.
  std::vector<std::int64_t> cnt(static_cast<std::size_t>(m), 0);
  std::vector<int> t(static_cast<std::size_t>(m), 0);
  for (int r = 0; r < m; ++r) {
    for (int j : I) cnt[static_cast<std::size_t>(r)] += B.at(r, j);
    t[static_cast<std::size_t>(r)] = cnt[static_cast<std::size_t>(r)] > 0 ? 1 : 0;
  }

  // Group readings, digit expansion, correction -- all by definition.
  const int groups = m / gamma;
  std::vector<int> t_hat(static_cast<std::size_t>(m), 0);
  std::vector<int> t_bar(static_cast<std::size_t>(m), 0);
  bool digitexact = true;
  for (int i = 0; i < groups; ++i) {
    std::int64_t s1 = 0;
    std::int64_t s2 = 0;
    std::int64_t weight = 1;
    bool unsaturated_rows = true;
    for (int j = 0; j < gamma; ++j) {
      const std::int64_t c = cnt[static_cast<std::size_t>(i) * gamma + j];
      // c * weight > cap exactly when c > floor(cap / weight).
      s1 = saturating_add(s1, c > cap / weight ? cap : c * weight, cap);
      s2 = saturating_add(s2, c, cap);
      if (c >= 4 * gamma) unsaturated_rows = false;
      weight *= 4 * gamma;
    }
    std::int64_t rest = s1;
    for (int j = 0; j < gamma; ++j) {
      const int digit = static_cast<int>(rest % (4 * gamma));
      rest /= 4 * gamma;
      const std::size_t pos = static_cast<std::size_t>(i) * gamma + j;
      t_hat[pos] = digit > 0 ? 1 : 0;
      t_bar[pos] = (s2 >= 4 * gamma) ? 1 : t_hat[pos];
      if (unsaturated_rows && digit != cnt[pos]) digitexact = false;
    }
  }

  AdaptiveClaimReport report;
  report.k = static_cast<int>(k);
  report.digitexact_ok = digitexact;
  report.monotone_ok = true;
  for (int r = 0; r < m; ++r) {
    if (t_hat[static_cast<std::size_t>(r)] != t[static_cast<std::size_t>(r)]) ++report.hamming_that_t;
    if (t_bar[static_cast<std::size_t>(r)] != t[static_cast<std::size_t>(r)]) ++report.hamming_tbar_t;
    if (t_bar[static_cast<std::size_t>(r)] < t[static_cast<std::size_t>(r)]) report.monotone_ok = false;
  }
  report.hamming_ok =
      4 * report.hamming_that_t <= d * k && 4 * report.hamming_tbar_t <= d * k;

  for (int p = 0; p < n; ++p) {
    bool consistent = true;
    for (int r = 0; r < m && consistent; ++r)
      if (B.at(r, p) != 0 && t_bar[static_cast<std::size_t>(r)] == 0) consistent = false;
    if (consistent) ++report.list_size;
  }
  report.listsize_ok = report.list_size <= d + (10 * d + 7) / 8;
  return report;
}

NonadaptiveClaimReport verify_nonadaptive_claims(const BucketScheme& scheme,
                                                 const DefectiveSet& I, int d) {
  if (d < 1) throw ParameterError("verify_nonadaptive_claims: d must be >= 1");
  if (I.size() > d) throw InstanceError("verify_nonadaptive_claims: |I| exceeds d");
  const RsCode& code = scheme.code;
  const int q = code.q();
  const int L = code.length();
  const int n = code.n();
  const int gamma = scheme.gamma;
  const int bpc = (q + gamma - 1) / gamma;
  const std::int64_t tau = own_tau(gamma);
  const std::int64_t cap = tau - 1;
  const int kappa = code.kappa();

  std::vector<std::vector<int>> words(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) words[static_cast<std::size_t>(j)] = code.codeword(j);

  // Per-(coordinate, value) defective counts.
  std::vector<std::int64_t> value_cnt(static_cast<std::size_t>(L) * q, 0);
  for (int y : I)
    for (int c = 0; c < L; ++c)
      ++value_cnt[static_cast<std::size_t>(c) * q + words[static_cast<std::size_t>(y)][static_cast<std::size_t>(c)]];

  // Bucket readings by definition.
  std::vector<std::int64_t> s1(static_cast<std::size_t>(L) * bpc, 0);
  std::vector<std::int64_t> s2(static_cast<std::size_t>(L) * bpc, 0);
  for (int c = 0; c < L; ++c) {
    for (int r = 0; r < bpc; ++r) {
      std::int64_t weight = 1;
      const std::size_t row = static_cast<std::size_t>(c) * bpc + r;
      for (int v = 0; v < gamma; ++v) {
        const int x = r * gamma + v;
        if (x >= q) break;
        const std::int64_t cnt = value_cnt[static_cast<std::size_t>(c) * q + x];
        s1[row] = saturating_add(s1[row], cnt > cap / weight ? cap : cnt * weight, cap);
        s2[row] = saturating_add(s2[row], cnt, cap);
        weight *= 4 * gamma;
      }
    }
  }

  // Exclusion rule applied from scratch.
  std::vector<int> decoded;
  for (int j = 0; j < n; ++j) {
    bool excluded = false;
    for (int c = 0; c < L && !excluded; ++c) {
      const int x = words[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      const int r = x / gamma;
      const std::size_t row = static_cast<std::size_t>(c) * bpc + r;
      if (s2[row] <= 4 * gamma - 1) {
        std::int64_t rest = s1[row];
        for (int v = 0; v < x - r * gamma; ++v) rest /= 4 * gamma;
        if (rest % (4 * gamma) == 0) excluded = true;
      }
    }
    if (!excluded) decoded.push_back(j);
  }

  NonadaptiveClaimReport report;
  report.decoded_size = static_cast<std::int64_t>(decoded.size());
  report.soundness_ok = std::includes(decoded.begin(), decoded.end(), I.begin(), I.end());
  report.unique_ok = decoded.size() == static_cast<std::size_t>(I.size()) && report.soundness_ok;

  // Distance-counting steps: agreement coordinates against I, and
  // readable coordinates against the shifted set (union of y + i*1).
  std::vector<std::vector<int>> shifted;
  for (int y : I)
    for (int i = -(gamma - 1); i <= gamma - 1; ++i) {
      std::vector<int> z(static_cast<std::size_t>(L));
      for (int c = 0; c < L; ++c)
        z[static_cast<std::size_t>(c)] =
            ((words[static_cast<std::size_t>(y)][static_cast<std::size_t>(c)] + i) % q + q) % q;
      shifted.push_back(std::move(z));
    }
  std::sort(shifted.begin(), shifted.end());
  shifted.erase(std::unique(shifted.begin(), shifted.end()), shifted.end());

  report.halfcoords_ok = true;
  report.markov_ok = true;
  for (int x = 0; x < n; ++x) {
    if (I.contains(x)) continue;
    const auto& wx = words[static_cast<std::size_t>(x)];
    std::int64_t agree = 0;
    for (int c = 0; c < L; ++c) {
      bool any = false;
      for (int y : I)
        if (words[static_cast<std::size_t>(y)][static_cast<std::size_t>(c)] == wx[static_cast<std::size_t>(c)]) {
          any = true;
          break;
        }
      if (any) ++agree;
    }
    report.max_agree_coords = std::max(report.max_agree_coords, agree);
    if (!I.empty() && (agree > static_cast<std::int64_t>(d) * (kappa - 1) || 2 * agree >= L))
      report.halfcoords_ok = false;

    std::int64_t readable = 0;
    for (int c = 0; c < L; ++c) {
      std::int64_t hits = 0;
      for (const auto& z : shifted)
        if (z[static_cast<std::size_t>(c)] == wx[static_cast<std::size_t>(c)]) ++hits;
      if (hits < 4 * gamma) ++readable;
    }
    if (2 * readable < L) report.markov_ok = false;
  }
  return report;
}

int code_min_distance(const RsCode& code, std::int64_t budget) {
  const int q = code.q();
  const int kappa = code.kappa();
  const int L = code.length();
  std::int64_t count = 1;
  for (int i = 0; i < kappa; ++i) {
    count *= q;
    if (count > budget) throw BudgetError("code_min_distance: codebook exceeds work budget");
  }
  if (static_cast<double>(count) * (count - 1) / 2 * L > static_cast<double>(budget))
    throw BudgetError("code_min_distance: pairwise comparisons exceed work budget");

  // Every codeword, from every message 0 <= msg < q^kappa.
  std::vector<std::vector<int>> words;
  words.reserve(static_cast<std::size_t>(count));
  for (std::int64_t msg = 0; msg < count; ++msg) {
    std::vector<int> coeff(static_cast<std::size_t>(kappa));
    std::int64_t rest = msg;
    for (int i = 0; i < kappa; ++i) {
      coeff[static_cast<std::size_t>(i)] = static_cast<int>(rest % q);
      rest /= q;
    }
    std::vector<int> w(static_cast<std::size_t>(L));
    for (int x = 0; x < L; ++x) {
      std::int64_t acc = 0;
      for (int i = kappa - 1; i >= 0; --i) acc = (acc * x + coeff[static_cast<std::size_t>(i)]) % q;
      w[static_cast<std::size_t>(x)] = static_cast<int>(acc);
    }
    words.push_back(std::move(w));
  }

  int best = L;
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      int dist = 0;
      for (int c = 0; c < L; ++c)
        if (words[a][static_cast<std::size_t>(c)] != words[b][static_cast<std::size_t>(c)]) ++dist;
      best = std::min(best, dist);
    }
  return best;
}

}  // namespace sqgt
