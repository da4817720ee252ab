#pragma once
// Deterministic CSV emission: header row, comma separators, '\n' endings,
// every number printed with 12 significant digits through one code path so
// identical runs produce byte-identical files.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "entlab/errors.hpp"

namespace entlab {

// 12-significant-digit, locale-independent rendering. Negative zero is
// normalized so +0 and -0 cannot differ between runs.
inline std::string format_sig12(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names) {
    write_texts(names);
  }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_sig12(v));
    write_texts(cells);
  }

  // Mixed text/number row (e.g. a channel label plus numeric columns).
  void row_texts(const std::vector<std::string>& cells) { write_texts(cells); }

 private:
  void write_texts(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].find(',') != std::string::npos ||
          cells[i].find('\n') != std::string::npos)
        throw InvalidArgument("csv cell may not contain ',' or newline: " +
                              cells[i]);
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ostream& out_;
};

}  // namespace entlab
