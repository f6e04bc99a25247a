// SPDX-License-Identifier: MIT
#include "illpose/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "illpose/detail/legendre.hpp"

namespace illpose {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double d_cos(double x) { return std::cos(x); }
double d_abs(double x) { return std::fabs(x); }
double d_sqrt(double x) { return std::sqrt(x); }

}  // namespace

std::vector<double> grid_nodes(const GridSpec& grid) {
  double length = 1.0;
  if (grid.domain == Domain::HalfLineTruncated) length = grid.truncation;
  int n = grid.n_points;
  std::vector<double> t(n);
  double h = length / n;
  for (int i = 0; i < n; ++i) t[i] = (i + 0.5) * h;
  return t;
}

OperatorMatrix build_integration(int m, const GridSpec& grid) {
  if (m < 1) throw std::invalid_argument("integration order m must be >= 1");
  if (grid.domain != Domain::UnitInterval)
    throw std::invalid_argument("integration operator lives on the unit interval");
  if (grid.scheme != Scheme::MidpointCollocation)
    throw std::invalid_argument("integration operator requires the midpoint collocation scheme");

  int N = grid.n_points;
  double h = 1.0 / N;
  double gamma_m = factorial(m - 1);
  Matrix A = Matrix::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    double s = (i + 1) * h;  // collocation at the right cell edge
    for (int j = 0; j <= i; ++j) {
      double t = (j + 0.5) * h;
      A(i, j) = (m == 1) ? h : h * std::pow(s - t, m - 1) / gamma_m;
    }
  }
  return {std::move(A), grid, "J^m:" + std::to_string(m), OperatorKind::CompactModel};
}

OperatorMatrix build_embedding_surrogate(int k, int dim, int N) {
  if (k < 1) throw std::invalid_argument("embedding order k must be >= 1");
  if (N < 1) throw std::invalid_argument("surrogate level N must be >= 1");
  if (dim != 1 && dim != 2) throw std::invalid_argument("embedding dim must be 1 or 2");

  std::vector<double> values;
  if (dim == 1) {
    values.resize(N);
    for (int n = 1; n <= N; ++n) values[n - 1] = std::pow(static_cast<double>(n), -k);
  } else {
    values.reserve(static_cast<size_t>(N) * N);
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j)
        values.push_back(std::pow(1.0 + double(i) * i + double(j) * j, -0.5 * k));
    std::sort(values.begin(), values.end(), std::greater<double>());
  }
  Eigen::Index n = static_cast<Eigen::Index>(values.size());
  Matrix A = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) A(i, i) = values[i];

  GridSpec g;
  g.n_points = N;
  g.domain = (dim == 1) ? Domain::UnitInterval : Domain::UnitSquare;
  g.scheme = Scheme::DiagonalSurrogate;
  std::string label = "E^k:" + std::to_string(k) + ":" + std::to_string(dim);
  return {std::move(A), g, label, OperatorKind::CompactModel};
}

OperatorMatrix build_hausdorff(int rows, const GridSpec& grid) {
  if (grid.scheme != Scheme::LegendreBasis)
    throw std::invalid_argument("Hausdorff operator requires the Legendre basis scheme");
  int n = grid.n_points;
  if (rows < 1 || rows > n)
    throw std::invalid_argument("Hausdorff row count must satisfy 1 <= rows <= n_points");

  // Integrands t^{j-1} p_i(t) have degree <= rows-1 + n-1; the rule below is
  // exact for them.
  int q = (rows + n) / 2 + 2;
  std::vector<double> x, w;
  detail::gauss_legendre_01<double>(q, x, w, M_PI, 1e-15, d_cos, d_abs, d_sqrt);

  Matrix B = Matrix::Zero(rows, n);
  std::vector<double> p;
  for (int node = 0; node < q; ++node) {
    detail::eval_orthonormal_legendre<double>(n, x[node], p, d_sqrt);
    double tpow = 1.0;
    for (int j = 1; j <= rows; ++j) {
      for (int i = 1; i <= n; ++i) B(j - 1, i - 1) += w[node] * tpow * p[i - 1];
      tpow *= x[node];
    }
  }
  return {std::move(B), grid, "BH", OperatorKind::CompactModel};
}

OperatorMatrix build_mixed_integration(int N) {
  if (N < 1) throw std::invalid_argument("mixed integration level N must be >= 1");
  OperatorMatrix J = build_integration(1, GridSpec::unit_interval(N));
  Eigen::Index n2 = static_cast<Eigen::Index>(N) * N;
  Matrix A(n2, n2);
  for (int i1 = 0; i1 < N; ++i1)
    for (int j1 = 0; j1 < N; ++j1) {
      double a = J.entries(i1, j1);
      A.block(static_cast<Eigen::Index>(i1) * N, static_cast<Eigen::Index>(j1) * N, N, N) =
          a * J.entries;
    }
  GridSpec g = GridSpec::unit_square(N);
  return {std::move(A), g, "J2", OperatorKind::CompactModel};
}

OperatorMatrix build_multiplication(const MultiplierSpec& f, const GridSpec& grid) {
  std::vector<double> t = grid_nodes(grid);
  int N = grid.n_points;
  Matrix A = Matrix::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    double v = f.eval(t[i]);
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("multiplier '" + f.name + "' is negative or non-finite at t=" +
                                  std::to_string(t[i]));
    A(i, i) = v;
  }
  return {std::move(A), grid, "M:" + f.name, OperatorKind::NoncompactModel};
}

OperatorMatrix build_gallery(const std::string& identifier, int N) {
  if (identifier.rfind("J^m:", 0) == 0) {
    int m = std::stoi(identifier.substr(4));
    return build_integration(m, GridSpec::unit_interval(N));
  }
  if (identifier.rfind("E^k:", 0) == 0) {
    std::string rest = identifier.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("embedding identifier needs E^k:<k>:<dim>");
    int k = std::stoi(rest.substr(0, colon));
    int dim = std::stoi(rest.substr(colon + 1));
    return build_embedding_surrogate(k, dim, N);
  }
  if (identifier == "BH")
    return build_hausdorff(N, GridSpec::unit_interval(N, Scheme::LegendreBasis));
  if (identifier == "J2") return build_mixed_integration(N);
  if (identifier.rfind("M:", 0) == 0) {
    MultiplierSpec f = make_multiplier(identifier.substr(2));
    GridSpec g = (f.domain_kind == MeasureKind::InfiniteMeasureHalfLine)
                     ? GridSpec::half_line(N, 100.0)
                     : GridSpec::unit_interval(N);
    return build_multiplication(f, g);
  }
  std::string msg = "unknown gallery identifier '" + identifier + "'; valid forms:";
  for (const auto& f : gallery_identifier_forms()) msg += " " + f;
  throw std::invalid_argument(msg);
}

std::vector<std::string> gallery_identifier_forms() {
  return {"J^m:<m>", "E^k:<k>:<dim>", "BH", "J2", "M:<fname>"};
}

}  // namespace illpose
