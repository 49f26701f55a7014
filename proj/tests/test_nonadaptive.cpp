#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include <doctest.h>

#include "sqgt/model.hpp"
#include "sqgt/nonadaptive.hpp"

namespace {

// Simulated bucket readings for a defective set under the scheme's channel.
struct Readings {
  sqgt::OutcomeVector s1, s2;
};

Readings simulate(const sqgt::BucketScheme& scheme, const sqgt::DefectiveSet& I) {
  return {sqgt::simulate_outcomes(scheme.s1, I, scheme.tau),
          sqgt::simulate_outcomes(scheme.s2, I, scheme.tau)};
}

}  // namespace

TEST_SUITE("nonadaptive") {

TEST_CASE("RsCode validates q, kappa, and n") {
  CHECK_NOTHROW(sqgt::RsCode(3, 1, 2));
  CHECK_THROWS_AS(sqgt::RsCode(4, 1, 2), sqgt::ParameterError);   // even
  CHECK_THROWS_AS(sqgt::RsCode(9, 1, 2), sqgt::ParameterError);   // composite
  CHECK_THROWS_AS(sqgt::RsCode(2, 1, 2), sqgt::ParameterError);   // not odd
  CHECK_THROWS_AS(sqgt::RsCode(5, 0, 2), sqgt::ParameterError);
  CHECK_THROWS_AS(sqgt::RsCode(5, 6, 2), sqgt::ParameterError);   // kappa > q
  CHECK_THROWS_AS(sqgt::RsCode(5, 2, 26), sqgt::ParameterError);  // n > q^kappa
  CHECK_THROWS_AS(sqgt::RsCode(5, 2, 1), sqgt::ParameterError);   // n < 2
}

TEST_CASE("codeword evaluates the base-q coefficient polynomial") {
  const sqgt::RsCode code(5, 2, 25);
  CHECK_EQ(code.length(), 5);
  CHECK_EQ(code.min_distance(), 4);
  CHECK_EQ(code.delta(), doctest::Approx(0.8));
  CHECK_EQ(code.codeword(7), std::vector<int>{2, 3, 4, 0, 1});    // 2 + x
  CHECK_EQ(code.codeword(1), std::vector<int>{1, 1, 1, 1, 1});    // constant 1
  CHECK_EQ(code.codeword(10), std::vector<int>{0, 2, 4, 1, 3});   // 2x
  CHECK_THROWS_AS(code.codeword(25), sqgt::InstanceError);
  CHECK_THROWS_AS(code.codeword(-1), sqgt::InstanceError);
}

TEST_CASE("build_rs_code picks the smallest odd prime meeting the hypothesis") {
  struct Row {
    int n, d, q, kappa;
  };
  const Row rows[] = {{841, 2, 11, 3}, {841, 1, 7, 4}, {5, 3, 5, 1},  {625, 2, 11, 3},
                      {2, 1, 3, 1},    {100, 2, 11, 2}, {1024, 3, 13, 3}};
  for (const Row& row : rows) {
    CAPTURE(row.n);
    CAPTURE(row.d);
    const sqgt::RsCode code = sqgt::build_rs_code(row.n, row.d, 2);
    CHECK_EQ(code.q(), row.q);
    CHECK_EQ(code.kappa(), row.kappa);
    CHECK_EQ(code.n(), row.n);
    CHECK(sqgt::code_satisfies_distance_hypothesis(code, row.d));
    // gamma affects the bucketing, never the code search
    CHECK_EQ(sqgt::build_rs_code(row.n, row.d, 5), code);
  }
  CHECK_FALSE(sqgt::code_satisfies_distance_hypothesis(sqgt::RsCode(3, 3, 27), 2));
  CHECK_THROWS_AS(sqgt::build_rs_code(1, 1, 2), sqgt::ParameterError);
  CHECK_THROWS_AS(sqgt::build_rs_code(100, 0, 2), sqgt::ParameterError);
  CHECK_THROWS_AS(sqgt::build_rs_code(100, 2, 0), sqgt::ParameterError);
}

TEST_CASE("pr_binary_matrix rows indicate codeword values") {
  const sqgt::RsCode code(5, 2, 25);
  const sqgt::TestMatrix M = sqgt::pr_binary_matrix(code);
  CHECK_EQ(M.rows(), 25);
  CHECK_EQ(M.cols(), 25);
  CHECK(M.is_binary());
  for (int j = 0; j < 25; ++j) {
    const std::vector<int> word = code.codeword(j);
    std::int64_t weight = 0;
    for (int c = 0; c < 5; ++c)
      for (int x = 0; x < 5; ++x) {
        CHECK_EQ(M.at(c * 5 + x, j), word[static_cast<std::size_t>(c)] == x ? 1 : 0);
        weight += M.at(c * 5 + x, j);
      }
    CHECK_EQ(weight, 5);  // one hit per coordinate
  }
}

TEST_CASE("build_bucket_scheme places one weighted entry per coordinate") {
  const sqgt::RsCode code(29, 2, 841);
  const sqgt::BucketScheme scheme = sqgt::build_bucket_scheme(code, 2);
  CHECK_EQ(scheme.buckets_per_coord, 15);
  CHECK_EQ(scheme.tau, 64);
  CHECK_EQ(scheme.s1.rows(), 29 * 15);
  CHECK_EQ(scheme.s1.cols(), 841);
  CHECK_EQ(scheme.s2.rows(), 29 * 15);
  CHECK_FALSE(scheme.single_bucket);

  const int j = 123;
  const std::vector<int> word = code.codeword(j);
  for (int c = 0; c < 29; ++c) {
    const int x = word[static_cast<std::size_t>(c)];
    for (int r = 0; r < 15; ++r) {
      const int row = c * 15 + r;
      if (r == x / 2) {
        CHECK_EQ(scheme.s1.at(row, j), x % 2 == 0 ? 1 : 8);  // 8^(x - 2r)
        CHECK_EQ(scheme.s2.at(row, j), 1);
      } else {
        CHECK_EQ(scheme.s1.at(row, j), 0);
        CHECK_EQ(scheme.s2.at(row, j), 0);
      }
    }
  }

  const sqgt::RsCode tiny(5, 1, 5);
  for (int gamma : {5, 7}) {
    const sqgt::BucketScheme wide = sqgt::build_bucket_scheme(tiny, gamma);
    CHECK(wide.single_bucket);
    CHECK_EQ(wide.buckets_per_coord, 1);
  }
  CHECK_THROWS_AS(sqgt::build_bucket_scheme(tiny, 0), sqgt::ParameterError);
}

TEST_CASE("count_by_value decodes digits or reports saturation") {
  using Counts = std::vector<std::int64_t>;
  CHECK_EQ(sqgt::count_by_value(19, 5, 2, 2), Counts{3, 2});
  CHECK_FALSE(sqgt::count_by_value(19, 8, 2, 2).has_value());  // s2 >= 4*gamma
  CHECK_EQ(sqgt::count_by_value(5, 5, 1, 2), Counts{5});
  CHECK_EQ(sqgt::count_by_value(2, 2, 1, 1), Counts{2});
  // digit above the bucket width: impossible under this scheme
  CHECK_THROWS_AS(sqgt::count_by_value(8, 1, 1, 2), sqgt::InstanceError);
  CHECK_THROWS_AS(sqgt::count_by_value(64, 0, 2, 2), sqgt::ParameterError);  // >= tau
  CHECK_THROWS_AS(sqgt::count_by_value(-1, 0, 2, 2), sqgt::ParameterError);
  CHECK_THROWS_AS(sqgt::count_by_value(0, -1, 2, 2), sqgt::ParameterError);
  CHECK_THROWS_AS(sqgt::count_by_value(0, 0, 0, 2), sqgt::ParameterError);   // width < 1
  CHECK_THROWS_AS(sqgt::count_by_value(0, 0, 3, 2), sqgt::ParameterError);   // width > gamma
}

TEST_CASE("exclusion_decode is exact for every small set under the hypothesis") {
  const sqgt::RsCode code(5, 1, 5);  // distance 5: hypothesis holds for any d
  const sqgt::BucketScheme scheme = sqgt::build_bucket_scheme(code, 2);
  int checked = 0;
  for (unsigned mask = 0; mask < 32; ++mask) {
    if (std::popcount(mask) > 3) continue;
    std::vector<int> items;
    for (int p = 0; p < 5; ++p)
      if (mask >> p & 1u) items.push_back(p);
    const sqgt::DefectiveSet I(items, 5);
    const Readings r = simulate(scheme, I);
    CHECK(sqgt::exclusion_decode(scheme, r.s1, r.s2) == I);
    ++checked;
  }
  CHECK_EQ(checked, 26);
}

TEST_CASE("exclusion_decode is exact on sampled sets of the built scheme") {
  const sqgt::RsCode code = sqgt::build_rs_code(100, 2, 2);
  const sqgt::BucketScheme scheme = sqgt::build_bucket_scheme(code, 2);
  const std::vector<std::vector<int>> sets{{}, {0}, {99}, {3, 97}, {50, 51}};
  for (const std::vector<int>& items : sets) {
    const sqgt::DefectiveSet I(items, 100);
    const Readings r = simulate(scheme, I);
    CHECK(sqgt::exclusion_decode(scheme, r.s1, r.s2) == I);
  }
}

TEST_CASE("exclusion_decode never excludes a defective even without the hypothesis") {
  const sqgt::RsCode code(3, 3, 27);  // distance 1: hypothesis fails at d = 2
  const sqgt::BucketScheme scheme = sqgt::build_bucket_scheme(code, 2);
  int checked = 0;
  std::vector<std::vector<int>> sets{{}};
  for (int a = 0; a < 27; ++a) {
    sets.push_back({a});
    for (int b = a + 1; b < 27; ++b) sets.push_back({a, b});
  }
  for (const std::vector<int>& items : sets) {
    const sqgt::DefectiveSet I(items, 27);
    const Readings r = simulate(scheme, I);
    const sqgt::DefectiveSet decoded = sqgt::exclusion_decode(scheme, r.s1, r.s2);
    CHECK(std::includes(decoded.begin(), decoded.end(), I.begin(), I.end()));
    ++checked;
  }
  CHECK_EQ(checked, 379);
}

TEST_CASE("shifted_defective_set produces sorted deduplicated shifts") {
  const std::vector<std::vector<int>> one{{0, 1, 2, 3, 4}};
  CHECK_EQ(sqgt::shifted_defective_set(one, 5, 2),
           std::vector<std::vector<int>>{{0, 1, 2, 3, 4}, {1, 2, 3, 4, 0}, {4, 0, 1, 2, 3}});
  const std::vector<std::vector<int>> pair{{0, 0}, {1, 1}};
  CHECK_EQ(sqgt::shifted_defective_set(pair, 3, 2),
           std::vector<std::vector<int>>{{0, 0}, {1, 1}, {2, 2}});
  CHECK_EQ(sqgt::shifted_defective_set(pair, 3, 1),
           std::vector<std::vector<int>>{{0, 0}, {1, 1}});  // identity at gamma = 1
  CHECK_THROWS_AS(sqgt::shifted_defective_set(one, 5, 0), sqgt::ParameterError);
  CHECK_THROWS_AS(sqgt::shifted_defective_set(one, 1, 2), sqgt::ParameterError);
  CHECK_THROWS_AS(sqgt::shifted_defective_set({{5}}, 5, 2), sqgt::InstanceError);
}

TEST_CASE("nonadaptive_test_count is 2 * length * buckets") {
  CHECK_EQ(sqgt::nonadaptive_test_count(sqgt::RsCode(11, 2, 100), 2), 132);
  CHECK_EQ(sqgt::nonadaptive_test_count(sqgt::RsCode(29, 2, 841), 2), 870);
  CHECK_EQ(sqgt::nonadaptive_test_count(sqgt::RsCode(5, 1, 5), 5), 10);
  CHECK_EQ(sqgt::nonadaptive_test_count(sqgt::RsCode(11, 3, 1331), 2), 132);
  CHECK_THROWS_AS(sqgt::nonadaptive_test_count(sqgt::RsCode(11, 2, 100), 0),
                  sqgt::ParameterError);
}

TEST_CASE("exclusion_decode validates reading vectors") {
  const sqgt::BucketScheme scheme = sqgt::build_bucket_scheme(sqgt::RsCode(5, 1, 5), 2);
  const sqgt::DefectiveSet I({2}, 5);
  Readings r = simulate(scheme, I);
  sqgt::OutcomeVector short_s1(r.s1.begin(), r.s1.end() - 1);
  CHECK_THROWS_AS(sqgt::exclusion_decode(scheme, short_s1, r.s2), sqgt::InstanceError);
  r.s1[0] = scheme.tau;  // impossible reading
  CHECK_THROWS_AS(sqgt::exclusion_decode(scheme, r.s1, r.s2), sqgt::InstanceError);
}

}  // TEST_SUITE("nonadaptive")
