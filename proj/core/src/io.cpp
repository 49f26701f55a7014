#include "sqgt/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace sqgt {
namespace {

// Reads one token of type T; throws InstanceError on EOF or junk.
template <typename T>
T read_token(std::istream& in, const char* what) {
  T value;
  if (!(in >> value)) throw InstanceError(std::string("malformed file: expected ") + what);
  return value;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open file for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot open file for writing: " + path);
  return out;
}

// One whitespace-separated line of integers (possibly empty).
std::vector<std::int64_t> read_int_line(std::istream& in) {
  std::string line;
  // Skip blank lines so a trailing newline after the header is harmless.
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::int64_t> values;
    std::int64_t v;
    while (ls >> v) values.push_back(v);
    if (!ls.eof()) throw InstanceError("malformed file: non-integer token");
    if (!values.empty() || !line.empty()) return values;
  }
  return {};
}

}  // namespace

void write_matrix(std::ostream& out, const TestMatrix& matrix, std::int64_t tau) {
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << tau << '\n';
  for (int r = 0; r < matrix.rows(); ++r) {
    auto row = matrix.row(r);
    for (int c = 0; c < matrix.cols(); ++c) {
      if (c) out << ' ';
      out << row[static_cast<std::size_t>(c)];
    }
    out << '\n';
  }
}

MatrixFile read_matrix(std::istream& in) {
  const int m = static_cast<int>(read_token<std::int64_t>(in, "row count"));
  const int n = static_cast<int>(read_token<std::int64_t>(in, "column count"));
  const std::int64_t tau = read_token<std::int64_t>(in, "tau");
  if (m <= 0 || n <= 0) throw InstanceError("matrix file: nonpositive dimensions");
  if (tau < 2) throw InstanceError("matrix file: tau must be >= 2");
  std::vector<std::int64_t> entries;
  entries.reserve(static_cast<std::size_t>(m) * n);
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m) * n; ++i) {
    const std::int64_t e = read_token<std::int64_t>(in, "matrix entry");
    if (e < 0) throw InstanceError("matrix file: negative entry");
    entries.push_back(e);
  }
  return {TestMatrix(m, n, std::move(entries)), tau};
}

void write_outcomes(std::ostream& out, const OutcomeVector& outcomes) {
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (i) out << ' ';
    out << outcomes[i];
  }
  out << '\n';
}

OutcomeVector read_outcomes(std::istream& in) {
  const auto values = read_int_line(in);
  return OutcomeVector(values.begin(), values.end());
}

void write_defective_set(std::ostream& out, const DefectiveSet& set) {
  bool first = true;
  for (int item : set) {
    if (!first) out << ' ';
    out << item + 1;  // 1-based on disk
    first = false;
  }
  out << '\n';
}

DefectiveSet read_defective_set(std::istream& in, int n) {
  const auto values = read_int_line(in);
  std::vector<int> items;
  items.reserve(values.size());
  for (std::int64_t v : values) {
    if (v < 1 || v > n)
      throw InstanceError("defective-set file: index " + std::to_string(v) + " outside [1, " +
                          std::to_string(n) + "]");
    items.push_back(static_cast<int>(v - 1));
  }
  return DefectiveSet(std::move(items), n);
}

void write_graph(std::ostream& out, const BipartiteGraph& graph) {
  out << graph.n_left() << ' ' << graph.m_right() << ' ' << graph.k() << '\n';
  for (int v = 0; v < graph.n_left(); ++v) {
    auto adj = graph.neighbors_of(v);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (i) out << ' ';
      out << adj[i] + 1;  // 1-based on disk
    }
    out << '\n';
  }
}

BipartiteGraph read_graph(std::istream& in) {
  const int n_left = static_cast<int>(read_token<std::int64_t>(in, "n_left"));
  const int m_right = static_cast<int>(read_token<std::int64_t>(in, "m_right"));
  const int k = static_cast<int>(read_token<std::int64_t>(in, "degree"));
  if (n_left <= 0 || m_right < 0 || k < 0) throw InstanceError("graph file: bad header");
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n_left));
  for (int v = 0; v < n_left; ++v) {
    adjacency[static_cast<std::size_t>(v)].reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const std::int64_t t = read_token<std::int64_t>(in, "neighbor index");
      if (t < 1 || t > m_right)
        throw InstanceError("graph file: neighbor " + std::to_string(t) + " outside [1, " +
                            std::to_string(m_right) + "]");
      adjacency[static_cast<std::size_t>(v)].push_back(static_cast<int>(t - 1));
    }
  }
  try {
    return BipartiteGraph(n_left, m_right, k, std::move(adjacency));
  } catch (const ParameterError& e) {
    throw InstanceError(std::string("graph file: ") + e.what());
  }
}

void write_code(std::ostream& out, const RsCode& code) {
  out << code.q() << ' ' << code.kappa() << ' ' << code.n() << '\n';
}

RsCode read_code(std::istream& in) {
  const int q = static_cast<int>(read_token<std::int64_t>(in, "q"));
  const int kappa = static_cast<int>(read_token<std::int64_t>(in, "kappa"));
  const int n = static_cast<int>(read_token<std::int64_t>(in, "n"));
  try {
    return RsCode(q, kappa, n);
  } catch (const ParameterError& e) {
    throw InstanceError(std::string("code file: ") + e.what());
  }
}

void save_matrix(const std::string& path, const TestMatrix& matrix, std::int64_t tau) {
  auto out = open_out(path);
  write_matrix(out, matrix, tau);
}

MatrixFile load_matrix(const std::string& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

void save_outcomes(const std::string& path, const OutcomeVector& outcomes) {
  auto out = open_out(path);
  write_outcomes(out, outcomes);
}

OutcomeVector load_outcomes(const std::string& path) {
  auto in = open_in(path);
  return read_outcomes(in);
}

void save_defective_set(const std::string& path, const DefectiveSet& set) {
  auto out = open_out(path);
  write_defective_set(out, set);
}

DefectiveSet load_defective_set(const std::string& path, int n) {
  auto in = open_in(path);
  return read_defective_set(in, n);
}

void save_graph(const std::string& path, const BipartiteGraph& graph) {
  auto out = open_out(path);
  write_graph(out, graph);
}

BipartiteGraph load_graph(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void save_code(const std::string& path, const RsCode& code) {
  auto out = open_out(path);
  write_code(out, code);
}

RsCode load_code(const std::string& path) {
  auto in = open_in(path);
  return read_code(in);
}

}  // namespace sqgt
