// SPDX-License-Identifier: MIT
//
// End-to-end acceptance runs: one pass/fail line per item, nonzero exit on
// any failure. Expected desk-scale runtime: every item under a minute, the
// whole binary under ten.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "illpose/experiment.hpp"
#include "illpose/gallery.hpp"
#include "illpose/hausdorff.hpp"
#include "illpose/multiplier.hpp"
#include "illpose/ordering.hpp"
#include "illpose/regularization.hpp"
#include "illpose/spectrum.hpp"

using namespace illpose;
namespace fs = std::filesystem;

namespace {

int failures = 0;
std::vector<std::string> notes;

void require(bool ok, const std::string& what) {
  if (!ok) notes.push_back(what);
}

void criterion(int number, const std::string& title, const std::function<void()>& body) {
  notes.clear();
  auto t0 = std::chrono::steady_clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    notes.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = notes.empty();
  std::printf("[%s] criterion %2d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", number, title.c_str(),
              secs);
  for (const std::string& n : notes) std::printf("        - %s\n", n.c_str());
  if (!ok) ++failures;
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

SpectrumResult spectrum_of(const std::string& id, int N) {
  return compute_spectrum(build_gallery(id, N));
}

}  // namespace

int main() {
  // 1 — analytic singular values of the simple integration operator
  criterion(1, "integration spectrum matches the analytic values", [] {
    auto t0 = std::chrono::steady_clock::now();
    SpectrumResult s = spectrum_of("J^m:1", 512);
    for (int n = 1; n <= 64; ++n) {
      double exact = 1.0 / ((n - 0.5) * M_PI);
      double rel = std::abs(s.at(n) - exact) / exact;
      require(rel < 0.01, "n=" + std::to_string(n) + " deviates by " + std::to_string(rel));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 5.0, "runtime " + std::to_string(secs) + "s exceeds 5s");
  });

  // 2 — integration rates and embedding verdicts
  criterion(2, "integration orders fit their rates and order against embeddings", [] {
    std::map<std::string, SpectrumResult> spectra;
    for (int m : {1, 2, 3}) {
      SpectrumResult s = spectrum_of("J^m:" + std::to_string(m), 512);
      PowerFit fit = fit_power(s, {16, 128});
      require(fit.theta >= m - 0.15 && fit.theta <= m + 0.15,
              "theta(J^" + std::to_string(m) + ") = " + std::to_string(fit.theta));
      spectra["J" + std::to_string(m)] = s;
    }
    for (int k : {1, 2, 3}) spectra["E" + std::to_string(k)] = spectrum_of(
        "E^k:" + std::to_string(k) + ":1", 512);
    for (int k : {1, 2, 3})
      for (int m : {1, 2, 3}) {
        OrderingVerdict v = pair_verdict(spectra.at("E" + std::to_string(k)),
                                         spectra.at("J" + std::to_string(m)), {16, 128});
        std::string tag = "E" + std::to_string(k) + " vs J" + std::to_string(m) + ": ";
        if (k > m)
          require(v.relation == Relation::StrictlyMoreIllPosed && !v.reversed,
                  tag + "expected the embedding strictly more ill-posed");
        else if (m > k)
          require(v.relation == Relation::StrictlyMoreIllPosed && v.reversed,
                  tag + "expected the integration operator strictly more ill-posed");
        else
          require(v.relation == Relation::Equivalent, tag + "expected Equivalent");
      }
  });

  // 3 — mixed integration over the square
  criterion(3, "mixed integration spectrum is poly-log and orders against embeddings", [] {
    auto t0 = std::chrono::steady_clock::now();
    OperatorMatrix J2 = build_mixed_integration(64);
    SpectrumResult s_j2 = compute_spectrum(J2);
    require(s_j2.length() == 4096, "expected a 4096 point spectrum");

    // dense route agrees with the product structure
    Vector base = compute_spectrum(build_integration(1, GridSpec::unit_interval(64))).values;
    std::vector<double> prod;
    for (int i = 0; i < 64; ++i)
      for (int j = 0; j < 64; ++j) prod.push_back(base(i) * base(j));
    std::sort(prod.begin(), prod.end(), std::greater<double>());
    double worst = 0.0;
    for (int i = 0; i < 4096; ++i) worst = std::max(worst, std::abs(s_j2.values(i) - prod[i]));
    require(worst <= 1e-10, "product identity violated by " + std::to_string(worst));

    DecayFit fit = fit_decay(s_j2, {6, 256});
    require(fit.model == FitModel::Polylog, "expected the poly-log model");
    require(fit.theta >= 0.85 && fit.theta <= 1.15, "theta = " + std::to_string(fit.theta));

    SpectrumResult s_e1 = spectrum_of("E^k:1:2", 64);
    SpectrumResult s_e2 = spectrum_of("E^k:2:2", 64);
    OrderingVerdict v1 = pair_verdict(s_j2, s_e1, {6, 256});
    require((v1.relation == Relation::StrictlyMoreIllPosed ||
             v1.relation == Relation::MoreIllPosed) &&
                !v1.reversed,
            "expected the mixed integration at or below the first embedding");
    OrderingVerdict v2 = pair_verdict(s_e2, s_j2, {6, 256});
    require(v2.relation == Relation::StrictlyMoreIllPosed && !v2.reversed,
            "expected the second embedding strictly more ill-posed");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 60.0, "runtime " + std::to_string(secs) + "s exceeds 60s");
  });

  // 4 — moment composition
  criterion(4, "moment composition decays strictly against integration", [] {
    SpectrumResult s_comp;
    s_comp.values = hausdorff_composition_singular_values(256);
    s_comp.level = 256;
    s_comp.label = "BH*Jleg";
    SpectrumResult s_j = spectrum_of("J^m:1", 256);
    std::vector<double> ratio;
    for (int n = 8; n <= 64; ++n) ratio.push_back(s_comp.at(n) / s_j.at(n));
    for (size_t i = 1; i < ratio.size(); ++i)
      require(ratio[i] < ratio[i - 1],
              "ratio not strictly decreasing at n=" + std::to_string(8 + i));
    size_t q = ratio.size() / 4;
    double first = 0.0, last = 0.0;
    for (size_t i = 0; i < q; ++i) first += ratio[i];
    for (size_t i = ratio.size() - q; i < ratio.size(); ++i) last += ratio[i];
    require(last / first < 0.25, "quarter means ratio " + std::to_string(last / first));
    require(compare_spectra(s_comp, s_j, {8, 64}).ratio_trend == Trend::Vanishing,
            "composition ratio trend is not vanishing");

    std::vector<std::pair<SpectrumResult, SpectrumResult>> pairs;
    for (int N : {64, 128, 256}) {
      SpectrumResult leg;
      leg.values = integration_legendre_singular_values(N);
      leg.level = N;
      leg.label = "Jleg";
      SpectrumResult comp;
      comp.values = hausdorff_composition_singular_values(N);
      comp.level = N;
      comp.label = "BH*Jleg@" + std::to_string(N);
      pairs.push_back({leg, comp});
    }
    // the composition spectra come from the extended-precision path, honest
    // far below the double-precision floor
    ProbeReport probe = ratio_probe_from_spectra(pairs, std::nullopt, 1e-30);
    require(!probe.noise_flag, "probe hit the working precision floor");
    require(probe.member_max[1].second > probe.member_max[0].second &&
                probe.member_max[2].second > probe.member_max[1].second,
            "probe maxima do not strictly increase across levels");
  });

  // 5 — factorization witnesses
  criterion(5, "witness certificates hold and compose transitively", [] {
    OperatorMatrix J1 = build_integration(1, GridSpec::unit_interval(256));
    OperatorMatrix J2 = build_integration(2, GridSpec::unit_interval(256));
    OperatorMatrix J3 = build_integration(3, GridSpec::unit_interval(256));
    auto check_pair = [&](const OperatorMatrix& ap, const OperatorMatrix& a, int rank,
                          const std::string& tag) {
      FactorizationWitness w = build_witness(ap, a, rank);
      double s1p = compute_spectrum(ap).at(1);
      require(w.orthogonality_defect <= 1e-10, tag + ": orthogonality defect too large");
      require(w.residual <= 1e-8 * s1p, tag + ": residual " + std::to_string(w.residual));
      return w;
    };
    FactorizationWitness w1 = check_pair(J3, J2, 64, "J3/J2");
    FactorizationWitness w2 = check_pair(J2, J1, 64, "J2/J1");
    check_pair(J3, J1, 64, "J3/J1");
    check_pair(build_embedding_surrogate(2, 1, 512),
               build_integration(1, GridSpec::unit_interval(512)), 128, "E2/J1");

    Matrix R = w1.R * w2.R;
    Matrix S = w2.S * w1.S;
    SvdTriple sp3 = full_svd(J3.entries, "J3");
    double composed = witness_residual_on(J3.entries, J1.entries, R, S, sp3.V.leftCols(64));
    double bound = w1.residual + operator_norm(w1.R) * w2.residual * operator_norm(w1.S);
    require(composed <= bound + 1e-12, "transitive composition exceeds the residual bound");

    // large pairs through the structured factors
    OperatorMatrix J2k = build_mixed_integration(64);
    OperatorMatrix E1 = build_embedding_surrogate(1, 2, 64);
    OperatorMatrix E2 = build_embedding_surrogate(2, 2, 64);
    SvdTriple k_svd = kron_square_svd(
        full_svd(build_integration(1, GridSpec::unit_interval(64)).entries));
    {
      FactorizationWitness w =
          build_witness_from_svds(k_svd, sorted_diagonal_svd(E1.entries), 1024, J2k.entries,
                                  E1.entries);
      require(w.orthogonality_defect <= 1e-10, "J2/E1: orthogonality defect too large");
      require(w.residual <= 1e-8 * k_svd.s(0), "J2/E1: residual " + std::to_string(w.residual));
    }
    {
      FactorizationWitness w =
          build_witness_from_svds(sorted_diagonal_svd(E2.entries), k_svd, 1024, E2.entries,
                                  J2k.entries);
      require(w.orthogonality_defect <= 1e-10, "E2/J2: orthogonality defect too large");
      require(w.residual <= 1e-8 * E2.entries(0, 0), "E2/J2: residual " +
                                                          std::to_string(w.residual));
    }
  });

  // 6 — range inclusion constants
  criterion(6, "range inclusion constant separates the nested pair", [] {
    auto j1 = [](int N) { return build_integration(1, GridSpec::unit_interval(N)); };
    auto j2 = [](int N) { return build_integration(2, GridSpec::unit_interval(N)); };
    DouglasEstimate nested = douglas_constant(j2, j1, {64, 128, 256});
    double mx = *std::max_element(nested.constants.begin(), nested.constants.end());
    double mn = *std::min_element(nested.constants.begin(), nested.constants.end());
    require(mx / mn < 4.0, "nested pair constants vary by " + std::to_string(mx / mn));
    require(nested.classification == DouglasClass::Bounded, "nested pair not bounded");
    DouglasEstimate swapped = douglas_constant(j1, j2, {64, 128, 256});
    require(swapped.constants.back() / swapped.constants.front() > 10.0,
            "swapped pair grows by only " +
                std::to_string(swapped.constants.back() / swapped.constants.front()));
    require(swapped.classification == DouglasClass::Diverging, "swapped pair not diverging");
  });

  // 7 — regularization dichotomy
  criterion(7, "regularization dichotomy separates the pair in both families", [] {
    OperatorMatrix J1 = build_integration(1, GridSpec::unit_interval(256));
    OperatorMatrix J2 = build_integration(2, GridSpec::unit_interval(256));
    for (const char* fam_name : {"tikhonov", "cutoff"}) {
      GeneratorFamily fam = parse_generator(fam_name);
      RegularizationProfile fwd =
          dichotomy_probe(J2, J1, std::nullopt, fam, default_alpha_grid());
      require(fwd.classification == RegClass::UniformlyBounded,
              std::string(fam_name) + ": nested pair not uniformly bounded");
      RegularizationProfile bwd =
          dichotomy_probe(J1, J2, std::nullopt, fam, default_alpha_grid());
      require(bwd.classification == RegClass::Unbounded,
              std::string(fam_name) + ": swapped pair not unbounded");
      double base = 0.0;
      for (double n : bwd.norms)
        if (n > 0.0) {
          base = n;
          break;
        }
      require(bwd.norms.back() / base >= 10.0,
              std::string(fam_name) + ": growth below the factor ten");
    }
  });

  // 8 — multiplier verdicts
  criterion(8, "multiplier quotients give the expected verdicts and constants", [] {
    QuotientReport lin = quotient_verdict(make_multiplier("linear:2"), make_multiplier("linear:1"),
                                          GridSpec::unit_interval(2001), {0, 1, 2});
    require(lin.verdict == Relation::Equivalent, "proportional pair not equivalent");
    require(std::abs(lin.both_directions.first - 2.0) <= 1e-12, "sup is not the exact constant");

    QuotientReport expq =
        quotient_verdict(make_multiplier("exp-inv:1"), make_multiplier("power:1"),
                         GridSpec::unit_interval(2001), {0, 1, 2});
    require(expq.verdict == Relation::StrictlyMoreIllPosed, "exp-inv pair not strict");
    require(std::abs(expq.both_directions.first - std::exp(-1.0)) <= 1e-6,
            "forward sup misses exp(-1)");

    QuotientReport inv =
        quotient_verdict(make_multiplier("inv-poly:2"), make_multiplier("inv-poly:1"),
                         GridSpec::half_line(1001, 10.0), {0, 1, 2});
    require(inv.verdict == Relation::StrictlyMoreIllPosed, "half-line pair not strict");
    require(std::abs(inv.both_directions.first - 1.0) <= 1e-6, "forward sup misses one");
  });

  // 9 — codimension lemma
  criterion(9, "codimension checks on the diagonal models and integration", [] {
    Matrix D = Matrix::Zero(70, 70), G = Matrix::Zero(70, 70);
    for (int n = 1; n <= 70; ++n) {
      D(n - 1, n - 1) = 1.0 / n;
      G(n - 1, n - 1) = std::pow(2.0, -n);
    }
    OperatorMatrix harmonic{D, GridSpec::unit_interval(70, Scheme::DiagonalSurrogate),
                            "harmonic", OperatorKind::CompactModel};
    OperatorMatrix geometric{G, GridSpec::unit_interval(70, Scheme::DiagonalSurrogate),
                             "geometric", OperatorKind::CompactModel};
    CodimReport r1 = codim_lemma_check(harmonic, 1, {1, 32});
    require(std::abs(r1.c_lower - 0.5) <= 1e-14, "harmonic c_lower != 1/2");
    require(r1.holds, "harmonic case should hold");
    CodimReport r2 = codim_lemma_check(geometric, 1, {1, 32});
    require(!r2.holds, "geometric case should fail");
    CodimReport r3 = codim_lemma_check(build_integration(1, GridSpec::unit_interval(256)), 2,
                                       {4, 32});
    require(r3.holds, "integration case should hold");
    require(r3.ratio_window.first >= 0.25 && r3.ratio_window.second <= 1.0 + 1e-10,
            "restriction ratio escapes [1/4, 1]");
  });

  // 10 — property suites
  criterion(10, "polar, fit round-trips, antisymmetry, reflexivity, determinism", [] {
    OperatorMatrix J = build_integration(1, GridSpec::unit_interval(128));
    PolarDecomposition p = polar_absolute(J);
    Vector s_abs = singular_values(p.abs_A.entries);
    Vector s = singular_values(J.entries);
    for (int i = 0; i < 128; ++i)
      require(std::abs(s_abs(i) - s(i)) <= 1e-10, "polar spectrum drift at i=" +
                                                       std::to_string(i));
    require(operator_norm(Matrix(J.entries - p.U * p.abs_A.entries)) <= 1e-10,
            "polar reconstruction drift");

    auto make = [](int len, const std::function<double(int)>& f) {
      SpectrumResult r;
      r.values = Vector(len);
      for (int n = 1; n <= len; ++n) r.values(n - 1) = f(n);
      r.level = len;
      r.label = "synthetic";
      return r;
    };
    DecayFit pw = fit_decay(make(64, [](int n) { return std::pow(n, -1.7); }), {1, 64});
    require(pw.model == FitModel::Power && std::abs(pw.theta - 1.7) <= 1e-6,
            "power round-trip failed");
    DecayFit pl = fit_decay(
        make(128, [](int n) { return 2.0 * std::pow(n, -1.2) * std::log(double(n)); }), {4, 128});
    require(pl.model == FitModel::Polylog && std::abs(pl.theta - 1.2) <= 1e-6 &&
                std::abs(pl.beta - 1.0) <= 1e-6,
            "poly-log round-trip failed");
    DecayFit ex = fit_decay(make(48, [](int n) { return std::exp(-0.3 * n); }), {1, 48});
    require(ex.model == FitModel::Exponential &&
                std::abs(ex.gamma_kappa.first - 0.3) <= 1e-6 &&
                std::abs(ex.gamma_kappa.second - 1.0) <= 1e-12,
            "exponential round-trip failed");

    auto fast = make(96, [](int n) { return std::pow(n, -1.5); });
    auto slow = make(96, [](int n) { return std::pow(n, -0.5); });
    SpectrumComparison fwd = compare_spectra(fast, slow, {1, 96});
    SpectrumComparison bwd = compare_spectra(slow, fast, {1, 96});
    require(fwd.ratio_trend == Trend::Vanishing && bwd.ratio_trend == Trend::Diverging,
            "comparison antisymmetry failed");
    SpectrumComparison self = compare_spectra(slow, slow, {1, 96});
    require(verdict_from_comparison(self, self) == Relation::Equivalent,
            "reflexivity failed");

    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::Compare;
    cfg.operators = {"E^k:2:1", "J^m:1"};
    cfg.levels = {128};
    cfg.output_dir = (fs::temp_directory_path() / "illpose_acceptance_det").string();
    fs::remove_all(cfg.output_dir);
    run_experiment(cfg);
    std::string first = slurp(cfg.output_dir + "/report.json");
    run_experiment(cfg);
    require(slurp(cfg.output_dir + "/report.json") == first,
            "report.json differs across reruns");
  });

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
