// SPDX-License-Identifier: MIT
#include "illpose/spectrum.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "illpose/svd.hpp"

namespace illpose {

namespace {

constexpr double kVanishFactor = 0.25;
constexpr double kDivergeFactor = 4.0;
constexpr double kBoundedLo = 0.5;
constexpr double kBoundedHi = 2.0;
constexpr double kBoundedMaxMin = 10.0;

// polylog wins over power only when it improves the residual by more than 1%
constexpr double kModelMarginRel = 0.01;
constexpr double kModelMarginAbs = 1e-9;
// the exponential family with small kappa mimics slow decay to within a few
// percent, so it is selected only on decisive evidence: genuine exponential
// data collapses its residual by orders of magnitude
constexpr double kExponentialDecisive = 0.5;

void check_window(IndexRange w, int len, int min_len = 1) {
  if (w.lo < 1 || w.hi > len || w.lo > w.hi)
    throw std::invalid_argument("window [" + std::to_string(w.lo) + "," + std::to_string(w.hi) +
                                "] out of range for spectrum of length " + std::to_string(len));
  if (w.length() < min_len)
    throw std::invalid_argument("window too short: need at least " + std::to_string(min_len) +
                                " points");
}

struct Ls2 {  // least squares on (1, x)
  double slope = 0.0, icpt = 0.0, rms = 0.0;
};

Ls2 least_squares_2(const std::vector<double>& x, const std::vector<double>& y) {
  const int M = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < M; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = M * sxx - sx * sx;
  Ls2 r;
  r.slope = (M * sxy - sx * sy) / det;
  r.icpt = (sy * sxx - sx * sxy) / det;
  double e2 = 0;
  for (int i = 0; i < M; ++i) {
    double e = y[i] - (r.icpt + r.slope * x[i]);
    e2 += e * e;
  }
  r.rms = std::sqrt(e2 / M);
  return r;
}

}  // namespace

double DecayFit::predict(int n) const {
  switch (model) {
    case FitModel::Power: return std::exp(log_c - theta * std::log(double(n)));
    case FitModel::Polylog:
      return std::exp(log_c - theta * std::log(double(n)) +
                      beta * std::log(std::log(double(n))));
    case FitModel::Exponential:
      return std::exp(log_c - gamma_kappa.first * std::pow(double(n), gamma_kappa.second));
  }
  return 0.0;
}

SpectrumResult compute_spectrum(const OperatorMatrix& A) {
  if (!A.entries.allFinite())
    throw std::invalid_argument("operator '" + A.label + "' has non-finite entries");
  SpectrumResult r;
  r.values = singular_values(A.entries, A.label);
  r.level = A.grid.n_points;
  r.label = A.label;
  return r;
}

PowerFit fit_power(const SpectrumResult& s, IndexRange w) {
  check_window(w, s.length());
  std::vector<double> x, y;
  x.reserve(w.length());
  y.reserve(w.length());
  for (int n = w.lo; n <= w.hi; ++n) {
    if (!(s.at(n) > 0.0)) throw std::invalid_argument("power fit needs positive values");
    x.push_back(std::log(double(n)));
    y.push_back(std::log(s.at(n)));
  }
  Ls2 ls = least_squares_2(x, y);
  return {-ls.slope, ls.icpt, ls.rms};
}

DecayFit fit_decay(const SpectrumResult& s, IndexRange w) {
  check_window(w, s.length(), 8);
  for (int n = w.lo; n <= w.hi; ++n)
    if (!(s.at(n) > 0.0))
      throw std::invalid_argument("decay fit window contains non-positive values");

  // power
  PowerFit pw = fit_power(s, w);

  // poly-log, on n >= 3 where log log n is usable
  int lo3 = std::max(w.lo, 3);
  double pl_theta = 0, pl_beta = 0, pl_logc = 0, pl_res = std::numeric_limits<double>::infinity();
  if (w.hi - lo3 + 1 >= 3) {
    const int M = w.hi - lo3 + 1;
    Eigen::MatrixXd X(M, 3);
    Vector y(M);
    for (int n = lo3; n <= w.hi; ++n) {
      int i = n - lo3;
      X(i, 0) = 1.0;
      X(i, 1) = std::log(double(n));
      X(i, 2) = std::log(std::log(double(n)));
      y(i) = std::log(s.at(n));
    }
    Vector b = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    pl_logc = b(0);
    pl_theta = -b(1);
    pl_beta = b(2);
    pl_res = std::sqrt((y - X * b).squaredNorm() / M);
  }

  // exponential with kappa from a fixed grid
  double ex_gamma = 0, ex_kappa = 0, ex_logc = 0,
         ex_res = std::numeric_limits<double>::infinity();
  for (int ki = 1; ki <= 20; ++ki) {
    double kappa = 0.1 * ki;
    std::vector<double> x, y;
    for (int n = w.lo; n <= w.hi; ++n) {
      x.push_back(std::pow(double(n), kappa));
      y.push_back(std::log(s.at(n)));
    }
    Ls2 ls = least_squares_2(x, y);
    if (ls.rms < ex_res) {
      ex_res = ls.rms;
      ex_gamma = -ls.slope;
      ex_kappa = kappa;
      ex_logc = ls.icpt;
    }
  }

  FitModel chosen;
  if (ex_res < kExponentialDecisive * std::min(pw.residual, pl_res))
    chosen = FitModel::Exponential;
  else if (pl_res < pw.residual - std::max(kModelMarginAbs, kModelMarginRel * pw.residual))
    chosen = FitModel::Polylog;
  else
    chosen = FitModel::Power;

  DecayFit fit;
  fit.model = chosen;
  fit.window = w;
  switch (chosen) {
    case FitModel::Power:
      fit.theta = pw.theta;
      fit.log_c = pw.log_c;
      fit.residual = pw.residual;
      break;
    case FitModel::Polylog:
      fit.theta = pl_theta;
      fit.beta = pl_beta;
      fit.log_c = pl_logc;
      fit.residual = pl_res;
      break;
    case FitModel::Exponential:
      fit.gamma_kappa = {ex_gamma, ex_kappa};
      fit.log_c = ex_logc;
      fit.residual = ex_res;
      break;
  }
  return fit;
}

SpectrumComparison compare_spectra(const SpectrumResult& sp, const SpectrumResult& sa,
                                   IndexRange w) {
  check_window(w, std::min(sp.length(), sa.length()));
  SpectrumComparison c;
  c.window = w;
  c.ratios.reserve(w.length());
  for (int n = w.lo; n <= w.hi; ++n) {
    if (!(sa.at(n) > 0.0))
      throw std::invalid_argument("comparison divides by a zero singular value at n=" +
                                  std::to_string(n));
    c.ratios.push_back(sp.at(n) / sa.at(n));
  }
  c.ratio_sup = *std::max_element(c.ratios.begin(), c.ratios.end());

  const int L = w.length();
  const int q = std::max(1, L / 4);
  auto geo_mean = [&](int from, int count) {
    double acc = 0.0;
    for (int i = from; i < from + count; ++i) acc += std::log(c.ratios[i]);
    return std::exp(acc / count);
  };
  double first = geo_mean(0, q);
  double last = geo_mean(L - q, q);
  double drift = last / first;
  double mx = *std::max_element(c.ratios.begin(), c.ratios.end());
  double mn = *std::min_element(c.ratios.begin(), c.ratios.end());

  if (drift < kVanishFactor)
    c.ratio_trend = Trend::Vanishing;
  else if (drift > kDivergeFactor)
    c.ratio_trend = Trend::Diverging;
  else if (drift >= kBoundedLo && drift <= kBoundedHi && mn > 0.0 && mx / mn < kBoundedMaxMin)
    c.ratio_trend = Trend::Bounded;
  else
    c.ratio_trend = Trend::Inconclusive;
  return c;
}

Relation verdict_from_comparison(const SpectrumComparison& fwd, const SpectrumComparison& bwd) {
  if (fwd.window != bwd.window)
    throw std::invalid_argument("forward and backward comparisons use different windows");
  if (fwd.ratio_trend == Trend::Inconclusive || bwd.ratio_trend == Trend::Inconclusive)
    return Relation::Undecided;
  if (fwd.ratio_trend == Trend::Bounded && bwd.ratio_trend == Trend::Bounded)
    return Relation::Equivalent;
  if (fwd.ratio_trend == Trend::Vanishing && bwd.ratio_trend == Trend::Diverging)
    return Relation::StrictlyMoreIllPosed;
  if (fwd.ratio_trend == Trend::Bounded && bwd.ratio_trend == Trend::Diverging)
    return Relation::MoreIllPosed;
  return Relation::Undecided;
}

double log_ratio_order(const SpectrumResult& s_num, const SpectrumResult& s_den, IndexRange w) {
  check_window(w, std::min(s_num.length(), s_den.length()));
  int lo = std::max(w.lo, 3);
  std::vector<double> x, y;
  for (int n = lo; n <= w.hi; ++n) {
    if (!(s_num.at(n) > 0.0) || !(s_den.at(n) > 0.0))
      throw std::invalid_argument("log-order slope needs positive values");
    x.push_back(std::log(std::log(double(n))));
    y.push_back(std::log(s_num.at(n) / s_den.at(n)));
  }
  if (x.size() < 2) throw std::invalid_argument("log-order slope needs at least two points");
  return least_squares_2(x, y).slope;
}

}  // namespace illpose
