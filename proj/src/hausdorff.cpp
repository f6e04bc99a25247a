// SPDX-License-Identifier: MIT
#include "illpose/hausdorff.hpp"

#include <quadmath.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "illpose/detail/legendre.hpp"
#include "illpose/svd.hpp"

namespace illpose {

namespace {

using quad = __float128;

quad q_cos(quad x) { return cosq(x); }
quad q_abs(quad x) { return fabsq(x); }
quad q_sqrt(quad x) { return sqrtq(x); }

// One-sided Jacobi on the columns, values only. Columns are pre-sorted by
// norm; pairs whose norms sit below the relevant scale are skipped. Small
// singular values keep high relative accuracy, which is the point of doing
// this in quad.
std::vector<quad> hestenes_singular_values(std::vector<std::vector<quad>>& col, int mrows) {
  const int n = static_cast<int>(col.size());
  std::vector<quad> nrm2(n);
  auto col_norm2 = [&](int j) {
    quad s = 0;
    for (int i = 0; i < mrows; ++i) s += col[j][i] * col[j][i];
    return s;
  };
  for (int j = 0; j < n; ++j) nrm2[j] = col_norm2(j);

  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return nrm2[a] > nrm2[b]; });
  std::vector<std::vector<quad>> sorted(n);
  for (int j = 0; j < n; ++j) sorted[j] = std::move(col[order[j]]);
  col = std::move(sorted);
  for (int j = 0; j < n; ++j) nrm2[j] = col_norm2(j);

  const quad max2 = nrm2.empty() ? quad(0) : nrm2[0];
  const quad tol = 1e-32Q;
  const quad skip2 = 1e-64Q;  // pairs entirely below sqrt(skip2)*smax are converged noise

  bool rotated = true;
  int sweeps = 0;
  while (rotated && sweeps < 40) {
    rotated = false;
    ++sweeps;
    for (int p = 0; p < n - 1; ++p) {
      if (nrm2[p] < skip2 * max2) continue;
      for (int q = p + 1; q < n; ++q) {
        if (nrm2[q] < skip2 * max2) continue;
        quad apq = 0;
        for (int i = 0; i < mrows; ++i) apq += col[p][i] * col[q][i];
        if (q_abs(apq) <= tol * q_sqrt(nrm2[p] * nrm2[q])) continue;
        rotated = true;
        quad tau = (nrm2[q] - nrm2[p]) / (2 * apq);
        quad t = (tau >= 0) ? quad(1) / (tau + q_sqrt(1 + tau * tau))
                            : quad(1) / (tau - q_sqrt(1 + tau * tau));
        quad c = quad(1) / q_sqrt(1 + t * t), s = c * t;
        for (int i = 0; i < mrows; ++i) {
          quad vp = col[p][i], vq = col[q][i];
          col[p][i] = c * vp - s * vq;
          col[q][i] = s * vp + c * vq;
        }
        nrm2[p] = col_norm2(p);
        nrm2[q] = col_norm2(q);
      }
    }
  }
  if (rotated) throw NumericalFailure("BH*J", "quad Jacobi SVD did not converge");

  std::vector<quad> sv(n);
  for (int j = 0; j < n; ++j) sv[j] = q_sqrt(nrm2[j]);
  std::sort(sv.begin(), sv.end(), [](quad a, quad b) { return a > b; });
  return sv;
}

// columns of the composed matrix B*K in quad: B(j,i) = int t^{j-1} p_i,
// K = Legendre section of the integration operator with one extra basis row
// so the product is the exact section of the composition.
std::vector<std::vector<quad>> composition_columns(int n) {
  const int q = n + 3;  // integrand degree <= (n-1)+(n) -> (n+2) nodes suffice
  std::vector<quad> x, w;
  detail::gauss_legendre_01<quad>(q, x, w, M_PIq, 1e-32Q, q_cos, q_abs, q_sqrt);

  // B : n x (n+1)
  std::vector<std::vector<quad>> B(n, std::vector<quad>(n + 1, quad(0)));
  std::vector<quad> p;
  for (int node = 0; node < q; ++node) {
    detail::eval_orthonormal_legendre<quad>(n + 1, x[node], p, q_sqrt);
    quad tpow = 1;
    for (int j = 1; j <= n; ++j) {
      for (int i = 1; i <= n + 1; ++i) B[j - 1][i - 1] += w[node] * tpow * p[i - 1];
      tpow *= x[node];
    }
  }

  // K : (n+1) x n, sparse columns
  std::vector<std::vector<quad>> K(n + 1, std::vector<quad>(n, quad(0)));
  detail::integration_legendre_entries<quad>(
      n + 1, n, [&](int r, int c, quad v) { K[r][c] = v; }, q_sqrt);

  std::vector<std::vector<quad>> C(n, std::vector<quad>(n, quad(0)));
  for (int jj = 0; jj < n; ++jj)
    for (int kk = 0; kk <= n; ++kk) {
      quad kv = K[kk][jj];
      if (kv == 0) continue;
      for (int ii = 0; ii < n; ++ii) C[jj][ii] += B[ii][kk] * kv;
    }
  return C;
}

}  // namespace

OperatorMatrix build_integration_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Legendre section needs n >= 1");
  Matrix K = Matrix::Zero(n, n);
  detail::integration_legendre_entries<double>(
      n, n, [&](int r, int c, double v) { K(r, c) = v; },
      [](double x) { return std::sqrt(x); });
  GridSpec g = GridSpec::unit_interval(n, Scheme::LegendreBasis);
  return {std::move(K), g, "Jleg", OperatorKind::CompactModel};
}

Vector hausdorff_composition_singular_values(int n) {
  if (n < 1) throw std::invalid_argument("composition needs n >= 1");
  auto cols = composition_columns(n);
  auto sv = hestenes_singular_values(cols, n);
  Vector out(n);
  for (int i = 0; i < n; ++i) out(i) = static_cast<double>(sv[i]);
  return out;
}

Vector integration_legendre_singular_values(int n) {
  return singular_values(build_integration_legendre(n).entries, "Jleg");
}

}  // namespace illpose
