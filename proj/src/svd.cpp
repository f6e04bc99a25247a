// SPDX-License-Identifier: MIT
#include "illpose/svd.hpp"

#include <Eigen/SVD>
#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace illpose {

namespace {

// Above this dimension Eigen's BDCSVD becomes the bottleneck on a single
// core; LAPACK's divide-and-conquer driver is used instead.
constexpr Eigen::Index kLapackThreshold = 1024;

Vector sorted_abs_diagonal(const Matrix& A) {
  Eigen::Index n = std::min(A.rows(), A.cols());
  Vector s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = std::abs(A(i, i));
  std::sort(s.data(), s.data() + n, std::greater<double>());
  return s;
}

Vector lapack_singular_values(const Matrix& A, const std::string& label) {
  lapack_int m = static_cast<lapack_int>(A.rows());
  lapack_int n = static_cast<lapack_int>(A.cols());
  Matrix work = A;  // dgesdd overwrites its input
  Vector s(std::min(m, n));
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m,
                                   s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw NumericalFailure(label, "dgesdd info=" + std::to_string(info));
  return s;
}

}  // namespace

bool is_exactly_diagonal(const Matrix& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      if (i != j && A(i, j) != 0.0) return false;
  return true;
}

Vector singular_values(const Matrix& A, const std::string& label) {
  if (A.rows() == 0 || A.cols() == 0) return Vector();
  if (!A.allFinite()) throw std::invalid_argument("matrix has non-finite entries [" + label + "]");
  if (is_exactly_diagonal(A)) return sorted_abs_diagonal(A);
  if (std::max(A.rows(), A.cols()) >= kLapackThreshold)
    return lapack_singular_values(A, label);
  Eigen::BDCSVD<Matrix> svd(A);
  if (svd.info() != Eigen::Success) throw NumericalFailure(label, "BDCSVD did not converge");
  return svd.singularValues();
}

SvdTriple full_svd(const Matrix& A, const std::string& label) {
  if (!A.allFinite()) throw std::invalid_argument("matrix has non-finite entries [" + label + "]");
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericalFailure(label, "BDCSVD did not converge");
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double operator_norm(const Matrix& A, const std::string& label) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  Vector s = singular_values(A, label);
  return s.size() ? s(0) : 0.0;
}

}  // namespace illpose
