// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_SPECTRUM_HPP
#define ILLPOSE_SPECTRUM_HPP

#include <string>
#include <vector>

#include "illpose/types.hpp"

namespace illpose {

/// Ordered singular spectrum of one discretized operator.
struct SpectrumResult {
  Vector values;      // non-increasing, >= 0
  int level = 0;      // discretization size N of the source grid
  std::string label;

  int length() const { return static_cast<int>(values.size()); }
  double at(int n) const { return values(n - 1); }  // 1-based
};

enum class FitModel { Power, Polylog, Exponential };

inline const char* to_string(FitModel m) {
  switch (m) {
    case FitModel::Power: return "power";
    case FitModel::Polylog: return "polylog";
    case FitModel::Exponential: return "exponential";
  }
  return "power";
}

/// Fitted decay model in the log domain. Only the parameters of the declared
/// model are meaningful; the others stay zero.
struct DecayFit {
  FitModel model = FitModel::Power;
  double theta = 0.0;                    // power / polylog exponent
  double beta = 0.0;                     // polylog log-exponent
  std::pair<double, double> gamma_kappa{0.0, 0.0};  // exponential rate and power
  double log_c = 0.0;
  double residual = 0.0;                 // RMS of the log-domain fit
  IndexRange window{1, 1};

  /// Model prediction for s_n.
  double predict(int n) const;
};

enum class Trend { Bounded, Vanishing, Diverging, Inconclusive };

inline const char* to_string(Trend t) {
  switch (t) {
    case Trend::Bounded: return "bounded";
    case Trend::Vanishing: return "vanishing";
    case Trend::Diverging: return "diverging";
    case Trend::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// Windowed ratio comparison of two spectra.
struct SpectrumComparison {
  double ratio_sup = 0.0;
  Trend ratio_trend = Trend::Inconclusive;
  IndexRange window{1, 1};
  std::vector<double> ratios;  // rho_n over the window, for reproducibility
};

/// Full singular-value sequence of the discretization, sorted non-increasing.
SpectrumResult compute_spectrum(const OperatorMatrix& A);

/// Least-squares power-law fit log s = log c - theta log n over the window.
struct PowerFit {
  double theta = 0.0;
  double log_c = 0.0;
  double residual = 0.0;
};
PowerFit fit_power(const SpectrumResult& s, IndexRange window);

/// Fits power, poly-log and exponential models in the log domain and returns
/// the winner. The poly-log model must beat the power law by more than 1% of
/// residual; the exponential model must halve the best alternative, since its
/// small-kappa branch shadows slow decay too closely for a plain comparison.
DecayFit fit_decay(const SpectrumResult& s, IndexRange window);

/// Ratios rho_n = s_n(A') / s_n(A) with the trend classified from geometric
/// quarter-window means (vanishing < 1/4, diverging > 4, bounded inside
/// [1/2, 2] with max/min < 10).
SpectrumComparison compare_spectra(const SpectrumResult& s_A_prime, const SpectrumResult& s_A,
                                   IndexRange window);

/// Spectra-level decision table over a comparison and its swap.
Relation verdict_from_comparison(const SpectrumComparison& forward,
                                 const SpectrumComparison& backward);

/// Slope of log(s_num/s_den) regressed on log log n over the window. A pure
/// log-factor difference (log n)^p between the sequences shows up as p here
/// while power-law mismatch contributes only mildly; used to separate rates
/// that differ by logarithmic orders.
double log_ratio_order(const SpectrumResult& s_num, const SpectrumResult& s_den,
                       IndexRange window);

}  // namespace illpose

#endif
