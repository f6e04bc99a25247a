// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_DETAIL_LEGENDRE_HPP
#define ILLPOSE_DETAIL_LEGENDRE_HPP

#include <cstddef>
#include <vector>

namespace illpose::detail {

// Gauss-Legendre rule on [0,1], nodes by Newton iteration on P_n. Works for
// any float-like scalar (double, __float128).
template <typename Real>
void gauss_legendre_01(int n, std::vector<Real>& x, std::vector<Real>& w,
                       Real pi, Real tol, Real (*cos_fn)(Real), Real (*abs_fn)(Real),
                       Real (*sqrt_fn)(Real)) {
  (void)sqrt_fn;
  x.assign(n, Real(0));
  w.assign(n, Real(0));
  for (int i = 0; i < n; ++i) {
    Real t = cos_fn(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    for (int it = 0; it < 200; ++it) {
      Real p0 = 1, p1 = t;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / Real(k);
        p0 = p1;
        p1 = p2;
      }
      Real dp = Real(n) * (t * p1 - p0) / (t * t - 1);
      Real dt = p1 / dp;
      t -= dt;
      if (abs_fn(dt) < tol) break;
    }
    Real p0 = 1, p1 = t;
    for (int k = 2; k <= n; ++k) {
      Real p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / Real(k);
      p0 = p1;
      p1 = p2;
    }
    Real dp = Real(n) * (t * p1 - p0) / (t * t - 1);
    x[i] = (Real(1) - t) / 2;  // maps descending cos roots to ascending nodes
    w[i] = Real(1) / ((1 - t * t) * dp * dp);
  }
}

// Orthonormal shifted Legendre basis p_1..p_K on [0,1] at point t:
// p_k(t) = sqrt(2k-1) * P_{k-1}(2t-1).
template <typename Real>
void eval_orthonormal_legendre(int K, Real t, std::vector<Real>& out, Real (*sqrt_fn)(Real)) {
  out.assign(K, Real(0));
  if (K == 0) return;
  Real x = 2 * t - 1;
  out[0] = 1;
  Real p0 = 1, p1 = x;
  if (K > 1) out[1] = sqrt_fn(Real(3)) * x;
  for (int k = 3; k <= K; ++k) {
    Real p2 = ((2 * (k - 1) - 1) * x * p1 - (k - 2) * p0) / Real(k - 1);
    p0 = p1;
    p1 = p2;
    out[k - 1] = sqrt_fn(Real(2 * k - 1)) * p2;
  }
}

// Matrix of the simple integration operator in the orthonormal shifted
// Legendre basis: entry (a-1, b-1) = <p_a, J p_b>. Exact by the Legendre
// antiderivative recurrence; each column has at most two nonzeros (three for
// the first column).
template <typename Real, typename MatSetter>
void integration_legendre_entries(int rows, int cols, MatSetter set, Real (*sqrt_fn)(Real)) {
  if (rows >= 1 && cols >= 1) set(0, 0, Real(0.5));
  if (rows >= 2 && cols >= 1) set(1, 0, Real(1) / (2 * sqrt_fn(Real(3))));
  for (int b = 2; b <= cols; ++b) {
    int k = b;
    if (k + 1 <= rows)
      set(k, b - 1, Real(1) / (2 * sqrt_fn(Real(2 * k - 1) * Real(2 * k + 1))));
    set(k - 2, b - 1, Real(-1) / (2 * sqrt_fn(Real(2 * k - 1) * Real(2 * k - 3))));
  }
}

}  // namespace illpose::detail

#endif
