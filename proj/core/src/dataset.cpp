#include "stochopt/problems/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace stochopt {

std::vector<Dataset::Column> Dataset::to_columns() const {
  std::vector<Column> cols(static_cast<std::size_t>(d));
  for (index_t i = 0; i < n; ++i) {
    const SparseRow& r = rows[static_cast<std::size_t>(i)];
    for (int j = 0; j < r.nnz(); ++j) {
      auto& c = cols[static_cast<std::size_t>(r.idx[static_cast<std::size_t>(j)])];
      c.row.push_back(i);
      c.val.push_back(r.val[static_cast<std::size_t>(j)]);
    }
  }
  return cols;
}

bool Dataset::labels_are_binary() const {
  for (double y : labels) {
    if (y != 1.0 && y != -1.0) return false;
  }
  return true;
}

namespace {

Dataset parse_stream(std::istream& in, int override_d) {
  Dataset ds;
  std::string line;
  index_t line_no = 0;
  int max_idx = 0;

  while (std::getline(in, line)) {
    ++line_no;
    // Strip comments and trailing whitespace; skip blank lines.
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::size_t end = line.find_last_not_of(" \t\r\n");
    if (end == std::string::npos) continue;
    line.erase(end + 1);

    std::istringstream ls(line);
    double label;
    if (!(ls >> label)) throw ParseError("cannot parse label", line_no);

    SparseRow row;
    std::string tok;
    int prev_idx = 0;
    while (ls >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size()) {
        throw ParseError("malformed feature token '" + tok + "'", line_no);
      }
      int idx = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + colon, idx);
      if (ec != std::errc() || p != tok.data() + colon) {
        throw ParseError("malformed feature index in '" + tok + "'", line_no);
      }
      if (idx < 1) throw ParseError("feature index must be >= 1", line_no);
      if (idx == prev_idx) throw ParseError("duplicate feature index", line_no);
      if (idx < prev_idx) throw ParseError("nonascending feature index", line_no);
      char* vend = nullptr;
      const char* vbeg = tok.c_str() + colon + 1;
      double value = std::strtod(vbeg, &vend);
      if (vend == vbeg || *vend != '\0') {
        throw ParseError("malformed feature value in '" + tok + "'", line_no);
      }
      prev_idx = idx;
      max_idx = std::max(max_idx, idx);
      row.idx.push_back(idx - 1);  // store 0-based
      row.val.push_back(value);
    }
    ds.rows.push_back(std::move(row));
    ds.labels.push_back(label);
  }

  ds.n = static_cast<index_t>(ds.rows.size());
  ds.d = override_d > 0 ? override_d : max_idx;
  if (override_d > 0 && max_idx > override_d) {
    throw ParseError("feature index exceeds declared dimension", 0);
  }
  return ds;
}

}  // namespace

Dataset load_libsvm(const std::string& path, int override_d) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_libsvm: cannot open " + path);
  return parse_stream(in, override_d);
}

Dataset parse_libsvm(const std::string& text, int override_d) {
  std::istringstream in(text);
  return parse_stream(in, override_d);
}

}  // namespace stochopt
