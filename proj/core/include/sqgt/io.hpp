#pragma once

// Plain-text serialization of matrices, outcomes, defective sets, and
// bipartite graphs.  Indices are 1-based in files and 0-based in memory.
//
//   matrix file:        "m n tau" then m lines of n nonnegative integers
//   outcome file:       one line of m integers
//   defective-set file: one line of 1-based subject indices (may be empty)
//   graph file:         "n_left m_right k" then n_left lines of k sorted
//                       1-based neighbor indices
//   code file:          one line "q kappa n"
//
// Malformed content throws InstanceError.

#include <iosfwd>
#include <string>

#include "sqgt/expander.hpp"
#include "sqgt/model.hpp"
#include "sqgt/nonadaptive.hpp"

namespace sqgt {

struct MatrixFile {
  TestMatrix matrix;
  std::int64_t tau = 2;
};

void write_matrix(std::ostream& out, const TestMatrix& matrix, std::int64_t tau);
MatrixFile read_matrix(std::istream& in);

void write_outcomes(std::ostream& out, const OutcomeVector& outcomes);
OutcomeVector read_outcomes(std::istream& in);

void write_defective_set(std::ostream& out, const DefectiveSet& set);
DefectiveSet read_defective_set(std::istream& in, int n);

void write_graph(std::ostream& out, const BipartiteGraph& graph);
BipartiteGraph read_graph(std::istream& in);

void write_code(std::ostream& out, const RsCode& code);
RsCode read_code(std::istream& in);

// Path-based wrappers; throw InstanceError when the file cannot be
// opened.
void save_matrix(const std::string& path, const TestMatrix& matrix, std::int64_t tau);
MatrixFile load_matrix(const std::string& path);
void save_outcomes(const std::string& path, const OutcomeVector& outcomes);
OutcomeVector load_outcomes(const std::string& path);
void save_defective_set(const std::string& path, const DefectiveSet& set);
DefectiveSet load_defective_set(const std::string& path, int n);
void save_graph(const std::string& path, const BipartiteGraph& graph);
BipartiteGraph load_graph(const std::string& path);
void save_code(const std::string& path, const RsCode& code);
RsCode load_code(const std::string& path);

}  // namespace sqgt
