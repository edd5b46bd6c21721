#pragma once

#include <string>
#include <vector>

#include "stochopt/core/types.hpp"

namespace stochopt {

// One sparse example row; indices are 0-based internally, strictly
// ascending, unique.
struct SparseRow {
  std::vector<int> idx;
  std::vector<double> val;

  int nnz() const { return static_cast<int>(idx.size()); }

  double dot(const Vector& w) const {
    double s = 0.0;
    for (int j = 0; j < nnz(); ++j) s += val[static_cast<std::size_t>(j)] * w[idx[static_cast<std::size_t>(j)]];
    return s;
  }

  // y += scale * x
  void add_to(Vector& y, double scale) const {
    for (int j = 0; j < nnz(); ++j) y[idx[static_cast<std::size_t>(j)]] += scale * val[static_cast<std::size_t>(j)];
  }

  double squared_norm() const {
    double s = 0.0;
    for (double v : val) s += v * v;
    return s;
  }
};

struct Dataset {
  index_t n = 0;
  int d = 0;
  std::vector<SparseRow> rows;
  std::vector<double> labels;

  // Column (feature-major) view; built on demand for coordinate methods.
  struct Column {
    std::vector<index_t> row;
    std::vector<double> val;
  };
  std::vector<Column> to_columns() const;

  // Distinguishes classification ({-1,+1} labels) from regression data.
  bool labels_are_binary() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, index_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_number(line) {}
  index_t line_number;
};

// Parses LIBSVM text: `<label> <index>:<value> ...` per line, 1-based
// ascending unique indices.  d is the maximum index seen unless
// override_d > 0.  Malformed lines, nonascending or duplicate indices
// raise ParseError with the offending line number.  An empty file yields
// n = 0 (solvers reject it).
Dataset load_libsvm(const std::string& path, int override_d = 0);

// Same grammar, from an in-memory string (used by tests).
Dataset parse_libsvm(const std::string& text, int override_d = 0);

}  // namespace stochopt
