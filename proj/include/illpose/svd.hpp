// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_SVD_HPP
#define ILLPOSE_SVD_HPP

#include "illpose/types.hpp"

namespace illpose {

/// Full SVD triple A = U * diag(s) * V^T with U, V square orthogonal.
struct SvdTriple {
  Matrix U;
  Vector s;
  Matrix V;
};

/// Singular values only, sorted non-increasing. Dispatches on structure:
/// exactly diagonal matrices are sorted directly, large dense matrices go
/// through LAPACK, everything else through Eigen's BDCSVD.
Vector singular_values(const Matrix& A, const std::string& label = "");

/// Full SVD with square U and V (BDCSVD). Intended for moderate sizes.
SvdTriple full_svd(const Matrix& A, const std::string& label = "");

/// Largest singular value.
double operator_norm(const Matrix& A, const std::string& label = "");

bool is_exactly_diagonal(const Matrix& A);

}  // namespace illpose

#endif
