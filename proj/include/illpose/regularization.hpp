// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_REGULARIZATION_HPP
#define ILLPOSE_REGULARIZATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "illpose/types.hpp"

namespace illpose {

enum class GeneratorKind { Tikhonov, SpectralCutoff, Landweber };

inline const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Tikhonov: return "tikhonov";
    case GeneratorKind::SpectralCutoff: return "cutoff";
    case GeneratorKind::Landweber: return "landweber";
  }
  return "tikhonov";
}

/// Spectral filter family g_alpha replacing 1/lambda in regularized
/// inversion. Landweber carries the step omega; the iteration count is
/// derived from alpha as k = ceil(1/alpha).
struct GeneratorFamily {
  GeneratorKind kind = GeneratorKind::Tikhonov;
  double omega = 0.0;  // landweber step, must satisfy 0 < omega < 1/s1(A)^2

  double eval(double lambda, double alpha) const;
};

GeneratorFamily parse_generator(const std::string& name, double omega = 0.0);

/// Default grid: 8 logarithmically spaced points 1e-1 .. 1e-8.
std::vector<double> default_alpha_grid();

enum class RegClass { UniformlyBounded, Unbounded, Inconclusive };

inline const char* to_string(RegClass c) {
  switch (c) {
    case RegClass::UniformlyBounded: return "uniformly_bounded";
    case RegClass::Unbounded: return "unbounded";
    case RegClass::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct RegularizationProfile {
  std::vector<double> alphas;
  std::vector<double> norms;
  RegClass classification = RegClass::Inconclusive;
  std::vector<double> errors;  // ||x_alpha - x0||, pointwise probe with known x0 only
};

/// Operator-norm trajectory of g_alpha(A^T A) A^T R^T A' over the alpha grid,
/// evaluated exactly through the SVD functional calculus. Bounded if the norm
/// stays within x4 of its value at the largest alpha; unbounded if it grows
/// by >= x10 and is still increasing at the smallest alpha.
RegularizationProfile dichotomy_probe(const OperatorMatrix& A_prime, const OperatorMatrix& A,
                                      const std::optional<Matrix>& R,
                                      const GeneratorFamily& family,
                                      const std::vector<double>& alphas);

/// Norm trajectory of the regularized solutions g_alpha(A^T A) A^T y. When x0
/// with y = A x0 is supplied, also records the reconstruction errors.
RegularizationProfile pointwise_dichotomy(const OperatorMatrix& A, const Vector& y,
                                          const GeneratorFamily& family,
                                          const std::vector<double>& alphas,
                                          const std::optional<Vector>& x0 = std::nullopt);

}  // namespace illpose

#endif
