// SPDX-License-Identifier: MIT
#include "illpose/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace illpose {

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_matrix_csv(const std::string& path, const Matrix& M) {
  std::ofstream out = open_out(path);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) out << ',';
      out << format_float(M(i, j));
    }
    out << '\n';
  }
}

void write_columns_csv(const std::string& path, const std::vector<std::string>& headers,
                       const std::vector<std::vector<double>>& columns) {
  if (columns.empty() || headers.size() != columns.size())
    throw std::invalid_argument("csv columns and headers must match");
  std::ofstream out = open_out(path);
  for (size_t c = 0; c < headers.size(); ++c) {
    if (c) out << ',';
    out << headers[c];
  }
  out << '\n';
  size_t rows = columns[0].size();
  for (const auto& col : columns)
    if (col.size() != rows) throw std::invalid_argument("csv columns have unequal lengths");
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ',';
      out << format_float(columns[c][r]);
    }
    out << '\n';
  }
}

}  // namespace illpose
