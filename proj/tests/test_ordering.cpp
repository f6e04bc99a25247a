// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>

#include "illpose/gallery.hpp"
#include "illpose/hausdorff.hpp"
#include "illpose/ordering.hpp"

using namespace illpose;

namespace {

OperatorMatrix diag_op(const std::vector<double>& d, const std::string& label) {
  Matrix D = Matrix::Zero(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) D(i, i) = d[i];
  return {D, GridSpec::unit_interval(int(d.size()), Scheme::DiagonalSurrogate), label,
          OperatorKind::CompactModel};
}

SpectrumResult from_formula(int len, double (*f)(int), const std::string& label = "s") {
  SpectrumResult s;
  s.values = Vector(len);
  for (int n = 1; n <= len; ++n) s.values(n - 1) = f(n);
  s.level = len;
  s.label = label;
  return s;
}

}  // namespace

TEST_CASE("witness of aligned diagonals") {
  OperatorMatrix A = diag_op({1.0, 0.5, 1.0 / 3}, "A");
  OperatorMatrix Ap = diag_op({1.0, 0.25, 1.0 / 9}, "Ap");
  FactorizationWitness w = build_witness(Ap, A, 3);
  CHECK(w.sigma(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w.sigma(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w.sigma(2) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(w.residual <= 1e-12);
  CHECK(w.orthogonality_defect <= 1e-12);
  CHECK((w.R - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("identity witness on a gallery operator") {
  OperatorMatrix J = build_integration(1, GridSpec::unit_interval(96));
  FactorizationWitness w = build_witness(J, J, 96);
  for (int i = 0; i < 96; ++i) CHECK(w.sigma(i) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.residual <= 1e-10);
  CHECK(w.orthogonality_defect <= 1e-10);
}

TEST_CASE("witness for the second order integration against the first") {
  OperatorMatrix J = build_integration(1, GridSpec::unit_interval(256));
  OperatorMatrix J2 = build_integration(2, GridSpec::unit_interval(256));
  FactorizationWitness w = build_witness(J2, J, 64);
  SpectrumResult sp = compute_spectrum(J2);
  CHECK(w.residual <= 1e-8 * sp.at(1));
  CHECK(w.orthogonality_defect <= 1e-10);
  double sigma_max = w.sigma.maxCoeff();
  CHECK(sigma_max <= (sp.at(1) / compute_spectrum(J).at(1)) * (1 + 1e-6));
}

TEST_CASE("witness rejects rank past a vanishing base spectrum") {
  OperatorMatrix A = diag_op({1.0, 0.5, 0.0}, "rank2");
  OperatorMatrix Ap = diag_op({1.0, 0.5, 0.25}, "full");
  CHECK_THROWS_AS(build_witness(Ap, A, 3), std::invalid_argument);
}

TEST_CASE("witness composition is transitive with the expected residual bound") {
  OperatorMatrix J1 = build_integration(1, GridSpec::unit_interval(128));
  OperatorMatrix J2 = build_integration(2, GridSpec::unit_interval(128));
  OperatorMatrix J3 = build_integration(3, GridSpec::unit_interval(128));
  FactorizationWitness w1 = build_witness(J3, J2, 32);  // J3 = R1 J2 S1
  FactorizationWitness w2 = build_witness(J2, J1, 32);  // J2 = R2 J1 S2
  Matrix R = w1.R * w2.R;
  Matrix S = w2.S * w1.S;
  SvdTriple sp = full_svd(J3.entries, "J3");
  double composed = witness_residual_on(J3.entries, J1.entries, R, S, sp.V.leftCols(32));
  double bound = w1.residual + operator_norm(w1.R) * w2.residual * operator_norm(w1.S);
  CHECK(composed <= bound + 1e-12);
}

TEST_CASE("polar decomposition of an orthogonal matrix") {
  double c = std::cos(0.7), s = std::sin(0.7);
  Matrix Q(2, 2);
  Q << c, -s, s, c;
  OperatorMatrix A{Q, GridSpec::unit_interval(2), "rot", OperatorKind::CompactModel};
  PolarDecomposition p = polar_absolute(A);
  CHECK((p.abs_A.entries - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((p.U - Q).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("polar decomposition splits signs") {
  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = -2.0;
  D(1, 1) = 3.0;
  OperatorMatrix A{D, GridSpec::unit_interval(2), "signdiag", OperatorKind::CompactModel};
  PolarDecomposition p = polar_absolute(A);
  CHECK(p.abs_A.entries(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p.abs_A.entries(1, 1) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(p.U(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(p.U(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("polar decomposition preserves the spectrum and reconstructs") {
  OperatorMatrix J = build_integration(1, GridSpec::unit_interval(128));
  PolarDecomposition p = polar_absolute(J);
  Vector s_abs = singular_values(p.abs_A.entries);
  Vector s = singular_values(J.entries);
  for (int i = 0; i < 128; ++i) CHECK(std::abs(s_abs(i) - s(i)) <= 1e-10);
  CHECK(operator_norm(Matrix(J.entries - p.U * p.abs_A.entries)) <= 1e-10);
}

TEST_CASE("douglas constant is one for identical operators") {
  auto builder = [](int N) { return build_integration(1, GridSpec::unit_interval(N)); };
  DouglasEstimate est = douglas_constant(builder, builder, {32, 64});
  for (double c : est.constants) CHECK(c == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(est.classification == DouglasClass::Bounded);
}

TEST_CASE("douglas diagnostic separates nested from swapped ranges") {
  auto j1 = [](int N) { return build_integration(1, GridSpec::unit_interval(N)); };
  auto j2 = [](int N) { return build_integration(2, GridSpec::unit_interval(N)); };
  DouglasEstimate nested = douglas_constant(j2, j1, {32, 64, 128});
  CHECK(nested.classification == DouglasClass::Bounded);
  DouglasEstimate swapped = douglas_constant(j1, j2, {32, 64, 128});
  CHECK(swapped.classification == DouglasClass::Diverging);
}

TEST_CASE("codim check on the harmonic diagonal") {
  std::vector<double> d(70);
  for (int n = 1; n <= 70; ++n) d[n - 1] = 1.0 / n;
  CodimReport r = codim_lemma_check(diag_op(d, "harmonic"), 1, {1, 32});
  CHECK(r.c_lower == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.holds);
  // the restriction drops the leading direction: s_n(QA) = 1/(n+1), so the
  // ratio to s_n = 1/n runs from 1/2 up to 32/33 over the window
  CHECK(r.ratio_window.first == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.ratio_window.second == doctest::Approx(32.0 / 33.0).epsilon(1e-12));
}

TEST_CASE("codim check fails on exponential decay") {
  std::vector<double> d(70);
  for (int n = 1; n <= 70; ++n) d[n - 1] = std::pow(2.0, -n);
  CodimReport r = codim_lemma_check(diag_op(d, "geometric"), 1, {1, 32});
  CHECK(!r.holds);
}

TEST_CASE("codim check on the integration operator") {
  OperatorMatrix J = build_integration(1, GridSpec::unit_interval(256));
  CodimReport r = codim_lemma_check(J, 2, {4, 32});
  CHECK(r.holds);
  CHECK(r.ratio_window.first >= 0.25);
  CHECK(r.ratio_window.second <= 1.0 + 1e-10);
}

TEST_CASE("compactness guard activates only across kinds") {
  CHECK(!compactness_guard(OperatorKind::CompactModel, OperatorKind::CompactModel));
  auto g = compactness_guard(OperatorKind::CompactModel, OperatorKind::NoncompactModel);
  REQUIRE(g);
  CHECK(g->a_never_below);
  CHECK(!g->a_prime_never_below);
  auto h = compactness_guard(OperatorKind::NoncompactModel, OperatorKind::CompactModel);
  REQUIRE(h);
  CHECK(h->a_prime_never_below);
}

TEST_CASE("guard upgrades an ordering against a noncompact base") {
  auto sp = from_formula(64, [](int n) { return std::pow(double(n), -2.0); }, "compact");
  auto sflat = from_formula(64, [](int) { return 1.0; }, "flat");
  OrderingVerdict v = pair_verdict(sp, sflat, {1, 64},
                                   std::make_pair(OperatorKind::CompactModel,
                                                  OperatorKind::NoncompactModel));
  CHECK(v.relation == Relation::StrictlyMoreIllPosed);
  CHECK(!v.reversed);
}

TEST_CASE("left inverse probe is flat for orthogonal compositions") {
  double c = std::cos(0.3), s = std::sin(0.3);
  Matrix Q = Matrix::Identity(64, 64);
  Q(0, 0) = c;
  Q(0, 1) = -s;
  Q(1, 0) = s;
  Q(1, 1) = c;
  OperatorMatrix T{Q, GridSpec::unit_interval(64), "rot", OperatorKind::CompactModel};
  OperatorMatrix J = build_integration(1, GridSpec::unit_interval(64));
  ProbeReport r = left_inverse_ratio_probe(T, {J});
  CHECK(r.max_ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("left inverse probe on a rank one operator") {
  // A = y0 x0^T, s1(A)/s1(TA) = |y0| / |T y0|
  Vector x0(3), y0(3);
  x0 << 1.0, 2.0, -1.0;
  y0 << 0.5, -1.0, 2.0;
  Matrix T(3, 3);
  T << 1, 0.2, 0, 0, 0.5, 0, 0.1, 0, 0.25;
  OperatorMatrix A{y0 * x0.transpose(), GridSpec::unit_interval(3), "rank1",
                   OperatorKind::CompactModel};
  OperatorMatrix Top{T, GridSpec::unit_interval(3), "T", OperatorKind::CompactModel};
  ProbeReport r = left_inverse_ratio_probe(Top, {A}, IndexRange{1, 1});
  CHECK(r.max_ratio == doctest::Approx(y0.norm() / (T * y0).norm()).epsilon(1e-12));
}

TEST_CASE("left inverse probe grows across the composition family") {
  std::vector<std::pair<SpectrumResult, SpectrumResult>> pairs;
  for (int N : {32, 64}) {
    SpectrumResult s_leg;
    s_leg.values = integration_legendre_singular_values(N);
    s_leg.level = N;
    s_leg.label = "Jleg";
    SpectrumResult s_comp;
    s_comp.values = hausdorff_composition_singular_values(N);
    s_comp.level = N;
    s_comp.label = "BH*Jleg";
    pairs.push_back({s_leg, s_comp});
  }
  ProbeReport r = ratio_probe_from_spectra(pairs);
  CHECK(r.member_max.size() == 2);
  CHECK(r.member_max[1].second > r.member_max[0].second);
  CHECK(!r.noise_flag);
}

TEST_CASE("rate order classification") {
  auto fast = from_formula(256, [](int n) { return std::pow(double(n), -2.0); });
  auto slow = from_formula(256, [](int n) { return 1.0 / n; });
  auto logslow = from_formula(256, [](int n) { return std::log(double(n) + 1) / n; });
  CHECK(classify_rate_order(fast, slow, {8, 256}) == RateOrder::AprimeFaster);
  CHECK(classify_rate_order(slow, fast, {8, 256}) == RateOrder::AprimeSlower);
  CHECK(classify_rate_order(slow, slow, {8, 256}) == RateOrder::Comparable);
  CHECK(classify_rate_order(logslow, slow, {8, 256}) == RateOrder::AprimeSlower);
  CHECK(classify_rate_order(slow, logslow, {8, 256}) == RateOrder::AprimeFaster);
}
