// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "illpose/gallery.hpp"
#include "illpose/spectrum.hpp"

using namespace illpose;

namespace {

SpectrumResult synthetic(const std::vector<double>& v, const std::string& label = "synthetic") {
  SpectrumResult s;
  s.values = Eigen::Map<const Vector>(v.data(), v.size());
  s.level = static_cast<int>(v.size());
  s.label = label;
  return s;
}

SpectrumResult from_formula(int len, double (*f)(int)) {
  std::vector<double> v(len);
  for (int n = 1; n <= len; ++n) v[n - 1] = f(n);
  return synthetic(v);
}

// small deterministic congruential generator for the invariance checks
struct Lcg {
  uint64_t state;
  double next() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return double(state >> 11) / double(1ull << 53);
  }
};

}  // namespace

TEST_CASE("spectrum of a diagonal matrix is its sorted diagonal") {
  Matrix D = Matrix::Zero(3, 3);
  D(0, 0) = 3;
  D(1, 1) = 1;
  D(2, 2) = 2;
  OperatorMatrix A{D, GridSpec::unit_interval(3), "diag", OperatorKind::CompactModel};
  SpectrumResult s = compute_spectrum(A);
  CHECK(s.at(1) == 3.0);
  CHECK(s.at(2) == 2.0);
  CHECK(s.at(3) == 1.0);
}

TEST_CASE("spectrum of the zero matrix") {
  OperatorMatrix A{Matrix::Zero(4, 4), GridSpec::unit_interval(4), "zero",
                   OperatorKind::CompactModel};
  SpectrumResult s = compute_spectrum(A);
  for (int n = 1; n <= 4; ++n) CHECK(s.at(n) == 0.0);
}

TEST_CASE("leading singular value of the integration operator") {
  SpectrumResult s = compute_spectrum(build_integration(1, GridSpec::unit_interval(512)));
  CHECK(std::abs(s.at(1) - 2.0 / M_PI) / (2.0 / M_PI) < 0.01);
}

TEST_CASE("spectrum is invariant under signed permutations") {
  OperatorMatrix J = build_integration(1, GridSpec::unit_interval(24));
  Vector ref = compute_spectrum(J).values;
  Lcg rng{12345};
  for (int trial = 0; trial < 3; ++trial) {
    // random signed permutations on both sides
    std::vector<int> p(24), q(24);
    for (int i = 0; i < 24; ++i) p[i] = q[i] = i;
    for (int i = 23; i > 0; --i) {
      std::swap(p[i], p[int(rng.next() * (i + 1))]);
      std::swap(q[i], q[int(rng.next() * (i + 1))]);
    }
    Matrix P = Matrix::Zero(24, 24), Q = Matrix::Zero(24, 24);
    for (int i = 0; i < 24; ++i) {
      P(i, p[i]) = rng.next() < 0.5 ? -1.0 : 1.0;
      Q(q[i], i) = rng.next() < 0.5 ? -1.0 : 1.0;
    }
    OperatorMatrix B{P * J.entries * Q, J.grid, "permuted", OperatorKind::CompactModel};
    Vector got = compute_spectrum(B).values;
    for (int i = 0; i < 24; ++i) CHECK(std::abs(got(i) - ref(i)) <= 1e-12);
  }
}

TEST_CASE("decay fit recovers an exact power law") {
  auto s = from_formula(64, [](int n) { return std::pow(double(n), -2.0); });
  DecayFit fit = fit_decay(s, {1, 64});
  CHECK(fit.model == FitModel::Power);
  CHECK(fit.theta == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit.residual < 1e-8);
}

TEST_CASE("decay fit recovers an exact exponential") {
  auto s = from_formula(32, [](int n) { return std::exp(-0.5 * n); });
  DecayFit fit = fit_decay(s, {1, 32});
  CHECK(fit.model == FitModel::Exponential);
  CHECK(fit.gamma_kappa.first == doctest::Approx(0.5).epsilon(0.01));
  CHECK(fit.gamma_kappa.second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decay fit recovers an exact poly-log model") {
  auto s = from_formula(128, [](int n) { return 0.7 * std::log(double(n)) / double(n); });
  DecayFit fit = fit_decay(s, {4, 128});
  CHECK(fit.model == FitModel::Polylog);
  CHECK(fit.theta == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.beta == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mixed integration spectrum fits the poly-log model") {
  // product form of the Kronecker spectrum, identical to the dense one
  Vector base = compute_spectrum(build_integration(1, GridSpec::unit_interval(64))).values;
  std::vector<double> prod;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) prod.push_back(base(i) * base(j));
  std::sort(prod.begin(), prod.end(), std::greater<double>());
  SpectrumResult s = synthetic(prod, "J2");
  DecayFit fit = fit_decay(s, {6, 256});
  CHECK(fit.model == FitModel::Polylog);
  CHECK(fit.theta > 0.85);
  CHECK(fit.theta < 1.15);
}

TEST_CASE("decay fit input validation") {
  auto s = from_formula(32, [](int n) { return 1.0 / n; });
  CHECK_THROWS_AS(fit_decay(s, {1, 40}), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay(s, {1, 4}), std::invalid_argument);
  std::vector<double> with_zero(16, 1.0);
  with_zero[10] = 0.0;
  CHECK_THROWS_AS(fit_decay(synthetic(with_zero), {1, 16}), std::invalid_argument);
}

TEST_CASE("comparison of power-separated spectra") {
  auto sp = from_formula(64, [](int n) { return std::pow(double(n), -2.0); });
  auto sa = from_formula(64, [](int n) { return 1.0 / n; });
  SpectrumComparison c = compare_spectra(sp, sa, {1, 64});
  CHECK(c.ratio_trend == Trend::Vanishing);
  CHECK(c.ratio_sup == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("comparison of a spectrum with itself") {
  auto s = from_formula(64, [](int n) { return 1.0 / n; });
  SpectrumComparison c = compare_spectra(s, s, {1, 64});
  CHECK(c.ratio_trend == Trend::Bounded);
  CHECK(c.ratio_sup == 1.0);
}

TEST_CASE("comparison trend is antisymmetric under swapping") {
  auto decay = [](int n) { return std::pow(double(n), -1.5); };
  auto flat = [](int n) { return 1.0 / std::sqrt(double(n)); };
  auto sp = from_formula(96, decay);
  auto sa = from_formula(96, flat);
  SpectrumComparison fwd = compare_spectra(sp, sa, {1, 96});
  SpectrumComparison bwd = compare_spectra(sa, sp, {1, 96});
  CHECK(fwd.ratio_trend == Trend::Vanishing);
  CHECK(bwd.ratio_trend == Trend::Diverging);
}

TEST_CASE("comparison rejects zero denominators") {
  std::vector<double> z(16, 0.0);
  auto sp = from_formula(16, [](int n) { return 1.0 / n; });
  CHECK_THROWS_AS(compare_spectra(sp, synthetic(z), {1, 16}), std::invalid_argument);
}

TEST_CASE("verdict decision table") {
  auto mk = [](Trend t) {
    SpectrumComparison c;
    c.ratio_trend = t;
    c.window = {1, 32};
    return c;
  };
  CHECK(verdict_from_comparison(mk(Trend::Bounded), mk(Trend::Bounded)) == Relation::Equivalent);
  CHECK(verdict_from_comparison(mk(Trend::Vanishing), mk(Trend::Diverging)) ==
        Relation::StrictlyMoreIllPosed);
  CHECK(verdict_from_comparison(mk(Trend::Bounded), mk(Trend::Diverging)) ==
        Relation::MoreIllPosed);
  CHECK(verdict_from_comparison(mk(Trend::Inconclusive), mk(Trend::Bounded)) ==
        Relation::Undecided);
  CHECK(verdict_from_comparison(mk(Trend::Diverging), mk(Trend::Vanishing)) ==
        Relation::Undecided);
  SpectrumComparison other = mk(Trend::Bounded);
  other.window = {2, 32};
  CHECK_THROWS_AS(verdict_from_comparison(mk(Trend::Bounded), other), std::invalid_argument);
}

TEST_CASE("log-order slope isolates logarithmic factors") {
  auto sp = from_formula(512, [](int n) { return std::log(double(n)) / double(n); });
  auto sa = from_formula(512, [](int n) { return 1.0 / n; });
  double lam = log_ratio_order(sp, sa, {8, 512});
  CHECK(lam == doctest::Approx(1.0).epsilon(0.05));
}
