// SPDX-License-Identifier: MIT
#include "illpose/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "illpose/svd.hpp"

namespace illpose {

namespace {

constexpr double kBoundedFactor = 4.0;
constexpr double kUnboundedFactor = 10.0;

void validate_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("alpha grid is empty");
  for (double a : alphas)
    if (!(a > 0.0)) throw std::invalid_argument("alpha values must be positive");
  for (size_t i = 1; i < alphas.size(); ++i)
    if (!(alphas[i] < alphas[i - 1]))
      throw std::invalid_argument("alpha grid must be strictly decreasing");
}

RegClass classify_profile(const std::vector<double>& norms) {
  // all-zero trajectories are trivially bounded (zero data)
  double base = 0.0;
  for (double n : norms)
    if (n > 0.0) {
      base = n;
      break;
    }
  if (base == 0.0) return RegClass::UniformlyBounded;

  double mx = *std::max_element(norms.begin(), norms.end());
  bool zero_head = norms.front() == 0.0;
  double first = zero_head ? base : norms.front();
  double last = norms.back();
  bool increasing_at_end = norms.size() >= 2 && last > norms[norms.size() - 2];

  if ((zero_head || mx / norms.front() < kBoundedFactor) && !(last / first >= kUnboundedFactor))
    return RegClass::UniformlyBounded;
  if (last / first >= kUnboundedFactor && increasing_at_end) return RegClass::Unbounded;
  return RegClass::Inconclusive;
}

}  // namespace

double GeneratorFamily::eval(double lambda, double alpha) const {
  switch (kind) {
    case GeneratorKind::Tikhonov:
      return 1.0 / (lambda + alpha);
    case GeneratorKind::SpectralCutoff:
      return lambda >= alpha ? 1.0 / lambda : 0.0;
    case GeneratorKind::Landweber: {
      double k = std::ceil(1.0 / alpha);
      if (lambda <= 0.0) return k * omega;
      // sum_{j<k} omega (1-omega*lambda)^j = (1 - (1-omega*lambda)^k) / lambda
      return -std::expm1(k * std::log1p(-omega * lambda)) / lambda;
    }
  }
  return 0.0;
}

GeneratorFamily parse_generator(const std::string& name, double omega) {
  GeneratorFamily f;
  f.omega = omega;
  if (name == "tikhonov")
    f.kind = GeneratorKind::Tikhonov;
  else if (name == "cutoff" || name == "spectral_cutoff")
    f.kind = GeneratorKind::SpectralCutoff;
  else if (name == "landweber")
    f.kind = GeneratorKind::Landweber;
  else
    throw std::invalid_argument("unknown generator family '" + name +
                                "'; use tikhonov|cutoff|landweber");
  return f;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> a;
  for (int e = 1; e <= 8; ++e) a.push_back(std::pow(10.0, -e));
  return a;
}

RegularizationProfile dichotomy_probe(const OperatorMatrix& A_prime, const OperatorMatrix& A,
                                      const std::optional<Matrix>& R,
                                      const GeneratorFamily& family,
                                      const std::vector<double>& alphas) {
  validate_alphas(alphas);
  if (R && (R->rows() != A.rows() || R->cols() != A_prime.rows()))
    throw std::invalid_argument("dichotomy R has incompatible dimensions");
  if (!R && A.rows() != A_prime.rows())
    throw std::invalid_argument("dichotomy needs matching range dimensions when R is identity");

  SvdTriple svd = full_svd(A.entries, A.label);
  double s1 = svd.s.size() ? svd.s(0) : 0.0;
  if (family.kind == GeneratorKind::Landweber &&
      !(family.omega > 0.0 && family.omega < 1.0 / (s1 * s1)))
    throw std::invalid_argument("landweber step omega must lie in (0, 1/s1(A)^2)");

  Matrix M = svd.U.transpose() * (R ? Matrix(R->transpose() * A_prime.entries)
                                    : A_prime.entries);

  RegularizationProfile prof;
  prof.alphas = alphas;
  for (double alpha : alphas) {
    Vector scale(svd.s.size());
    for (Eigen::Index i = 0; i < svd.s.size(); ++i) {
      double lambda = svd.s(i) * svd.s(i);
      scale(i) = family.eval(lambda, alpha) * svd.s(i);
    }
    prof.norms.push_back(operator_norm(Matrix(scale.asDiagonal() * M), "dichotomy-probe"));
  }
  prof.classification = classify_profile(prof.norms);
  return prof;
}

RegularizationProfile pointwise_dichotomy(const OperatorMatrix& A, const Vector& y,
                                          const GeneratorFamily& family,
                                          const std::vector<double>& alphas,
                                          const std::optional<Vector>& x0) {
  validate_alphas(alphas);
  if (y.size() != A.rows()) throw std::invalid_argument("vector y does not match the range dim");
  if (x0 && x0->size() != A.cols())
    throw std::invalid_argument("vector x0 does not match the domain dim");

  SvdTriple svd = full_svd(A.entries, A.label);
  double s1 = svd.s.size() ? svd.s(0) : 0.0;
  if (family.kind == GeneratorKind::Landweber &&
      !(family.omega > 0.0 && family.omega < 1.0 / (s1 * s1)))
    throw std::invalid_argument("landweber step omega must lie in (0, 1/s1(A)^2)");

  Vector uy = svd.U.transpose() * y;
  RegularizationProfile prof;
  prof.alphas = alphas;
  for (double alpha : alphas) {
    Vector coeff(svd.s.size());
    for (Eigen::Index i = 0; i < svd.s.size(); ++i) {
      double lambda = svd.s(i) * svd.s(i);
      coeff(i) = family.eval(lambda, alpha) * svd.s(i) * uy(i);
    }
    prof.norms.push_back(coeff.norm());
    if (x0) prof.errors.push_back((svd.V.leftCols(coeff.size()) * coeff - *x0).norm());
  }
  prof.classification = classify_profile(prof.norms);
  return prof;
}

}  // namespace illpose
