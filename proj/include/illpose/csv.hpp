// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_CSV_HPP
#define ILLPOSE_CSV_HPP

#include <string>
#include <vector>

#include "illpose/types.hpp"

namespace illpose {

/// Shortest text that round-trips a double at full precision (17 significant
/// digits).
std::string format_float(double v);

void write_matrix_csv(const std::string& path, const Matrix& M);

/// Column-oriented CSV with a header row.
void write_columns_csv(const std::string& path, const std::vector<std::string>& headers,
                       const std::vector<std::vector<double>>& columns);

}  // namespace illpose

#endif
