#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "sqgt/io.hpp"

namespace {

sqgt::MatrixFile read_matrix_from(const std::string& text) {
  std::istringstream in(text);
  return sqgt::read_matrix(in);
}

sqgt::BipartiteGraph read_graph_from(const std::string& text) {
  std::istringstream in(text);
  return sqgt::read_graph(in);
}

sqgt::RsCode read_code_from(const std::string& text) {
  std::istringstream in(text);
  return sqgt::read_code(in);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("matrix files round-trip and pin the header format") {
  const sqgt::TestMatrix mat(2, 3, {1, 0, 8, 0, 2, 0});
  std::ostringstream out;
  sqgt::write_matrix(out, mat, 64);
  CHECK_EQ(out.str(), "2 3 64\n1 0 8\n0 2 0\n");
  const sqgt::MatrixFile mf = read_matrix_from(out.str());
  CHECK(mf.matrix == mat);
  CHECK_EQ(mf.tau, 64);
}

TEST_CASE("matrix reader rejects malformed content") {
  CHECK_THROWS_AS(read_matrix_from("2 2 64\n1 0\n"), sqgt::InstanceError);   // short
  CHECK_THROWS_AS(read_matrix_from("2 2 1\n1 0\n0 1\n"), sqgt::InstanceError);  // tau < 2
  CHECK_THROWS_AS(read_matrix_from("0 2 2\n"), sqgt::InstanceError);
  CHECK_THROWS_AS(read_matrix_from("1 1 4\n-2\n"), sqgt::InstanceError);
  CHECK_THROWS_AS(read_matrix_from("1 1 4\nx\n"), sqgt::InstanceError);
  CHECK_THROWS_AS(read_matrix_from(""), sqgt::InstanceError);
}

TEST_CASE("outcome files hold one line of readings") {
  std::ostringstream out;
  sqgt::write_outcomes(out, {3, 0, 63});
  CHECK_EQ(out.str(), "3 0 63\n");
  std::istringstream in(out.str());
  CHECK_EQ(sqgt::read_outcomes(in), sqgt::OutcomeVector{3, 0, 63});
  std::istringstream empty("");
  CHECK(sqgt::read_outcomes(empty).empty());
  std::istringstream junk("1 2 x\n");
  CHECK_THROWS_AS(sqgt::read_outcomes(junk), sqgt::InstanceError);
}

TEST_CASE("defective sets are 1-based on disk") {
  const sqgt::DefectiveSet set({0, 2}, 5);
  std::ostringstream out;
  sqgt::write_defective_set(out, set);
  CHECK_EQ(out.str(), "1 3\n");
  std::istringstream in(out.str());
  CHECK(sqgt::read_defective_set(in, 5) == set);

  const sqgt::DefectiveSet none({}, 5);
  std::ostringstream empty_out;
  sqgt::write_defective_set(empty_out, none);
  CHECK_EQ(empty_out.str(), "\n");
  std::istringstream empty_in(empty_out.str());
  CHECK(sqgt::read_defective_set(empty_in, 5) == none);

  std::istringstream high("6\n");
  CHECK_THROWS_AS(sqgt::read_defective_set(high, 5), sqgt::InstanceError);
  std::istringstream zero("0\n");
  CHECK_THROWS_AS(sqgt::read_defective_set(zero, 5), sqgt::InstanceError);
  std::istringstream dup("2 2\n");
  CHECK_THROWS_AS(sqgt::read_defective_set(dup, 5), sqgt::InstanceError);
}

TEST_CASE("graph files round-trip with 1-based neighbor lists") {
  const sqgt::BipartiteGraph g(3, 4, 2, {{0, 2}, {1, 3}, {0, 1}});
  std::ostringstream out;
  sqgt::write_graph(out, g);
  CHECK_EQ(out.str(), "3 4 2\n1 3\n2 4\n1 2\n");
  CHECK(read_graph_from(out.str()) == g);

  CHECK_THROWS_AS(read_graph_from("2 4 2\n1 5\n1 2\n"), sqgt::InstanceError);  // out of range
  CHECK_THROWS_AS(read_graph_from("2 4 2\n0 1\n1 2\n"), sqgt::InstanceError);  // 0 is invalid
  CHECK_THROWS_AS(read_graph_from("2 4 2\n1 1\n1 2\n"), sqgt::InstanceError);  // duplicate
  CHECK_THROWS_AS(read_graph_from("2 4 2\n1 2\n"), sqgt::InstanceError);       // short
  CHECK_THROWS_AS(read_graph_from("0 4 2\n"), sqgt::InstanceError);
}

TEST_CASE("code files carry the (q, kappa, n) triple") {
  const sqgt::RsCode code(11, 2, 100);
  std::ostringstream out;
  sqgt::write_code(out, code);
  CHECK_EQ(out.str(), "11 2 100\n");
  CHECK(read_code_from(out.str()) == code);
  CHECK_THROWS_AS(read_code_from("4 1 2\n"), sqgt::InstanceError);   // even q
  CHECK_THROWS_AS(read_code_from("11 0 5\n"), sqgt::InstanceError);  // kappa < 1
  CHECK_THROWS_AS(read_code_from("11 2\n"), sqgt::InstanceError);    // short
}

TEST_CASE("path wrappers save and load through the filesystem") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "sqgt_io_test";
  fs::create_directories(dir);

  const sqgt::TestMatrix mat(2, 2, {1, 0, 3, 1});
  sqgt::save_matrix((dir / "m.matrix").string(), mat, 64);
  const sqgt::MatrixFile mf = sqgt::load_matrix((dir / "m.matrix").string());
  CHECK(mf.matrix == mat);
  CHECK_EQ(mf.tau, 64);

  const sqgt::OutcomeVector outcomes{0, 5, 63};
  sqgt::save_outcomes((dir / "o.out").string(), outcomes);
  CHECK_EQ(sqgt::load_outcomes((dir / "o.out").string()), outcomes);

  const sqgt::DefectiveSet set({1, 4}, 6);
  sqgt::save_defective_set((dir / "s.set").string(), set);
  CHECK(sqgt::load_defective_set((dir / "s.set").string(), 6) == set);

  const sqgt::BipartiteGraph g(2, 3, 1, {{2}, {0}});
  sqgt::save_graph((dir / "g.graph").string(), g);
  CHECK(sqgt::load_graph((dir / "g.graph").string()) == g);

  const sqgt::RsCode code(5, 2, 25);
  sqgt::save_code((dir / "c.code").string(), code);
  CHECK(sqgt::load_code((dir / "c.code").string()) == code);

  CHECK_THROWS_AS(sqgt::load_matrix((dir / "missing.matrix").string()), sqgt::InstanceError);
  fs::remove_all(dir);
}

}  // TEST_SUITE("io")
