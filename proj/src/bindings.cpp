// SPDX-License-Identifier: MIT
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "illpose/experiment.hpp"
#include "illpose/gallery.hpp"
#include "illpose/hausdorff.hpp"
#include "illpose/multiplier.hpp"
#include "illpose/ordering.hpp"
#include "illpose/regularization.hpp"
#include "illpose/spectrum.hpp"

namespace py = pybind11;
using namespace illpose;

PYBIND11_MODULE(_illpose, m) {
  m.doc() = "partial ordering of discretized ill-posed operators";

  py::register_exception<NumericalFailure>(m, "NumericalFailure");

  py::enum_<Relation>(m, "Relation")
      .value("MoreIllPosed", Relation::MoreIllPosed)
      .value("StrictlyMoreIllPosed", Relation::StrictlyMoreIllPosed)
      .value("Equivalent", Relation::Equivalent)
      .value("Incomparable", Relation::Incomparable)
      .value("Undecided", Relation::Undecided);

  py::enum_<Trend>(m, "Trend")
      .value("Bounded", Trend::Bounded)
      .value("Vanishing", Trend::Vanishing)
      .value("Diverging", Trend::Diverging)
      .value("Inconclusive", Trend::Inconclusive);

  py::enum_<FitModel>(m, "FitModel")
      .value("Power", FitModel::Power)
      .value("Polylog", FitModel::Polylog)
      .value("Exponential", FitModel::Exponential);

  py::class_<IndexRange>(m, "IndexRange")
      .def(py::init<int, int>(), py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &IndexRange::lo)
      .def_readwrite("hi", &IndexRange::hi)
      .def("__repr__", [](const IndexRange& w) {
        return "IndexRange(" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + ")";
      });

  py::class_<GridSpec>(m, "GridSpec")
      .def_static("unit_interval", [](int n) { return GridSpec::unit_interval(n); }, py::arg("n"))
      .def_static("half_line", &GridSpec::half_line, py::arg("n"), py::arg("T"))
      .def_readonly("n_points", &GridSpec::n_points)
      .def_readonly("truncation", &GridSpec::truncation);

  py::class_<OperatorMatrix>(m, "OperatorMatrix")
      .def_property_readonly("entries",
                             [](const OperatorMatrix& A) { return A.entries; })
      .def_readonly("label", &OperatorMatrix::label)
      .def_property_readonly("noncompact", [](const OperatorMatrix& A) {
        return A.kind == OperatorKind::NoncompactModel;
      })
      .def_property_readonly("level", [](const OperatorMatrix& A) { return A.grid.n_points; })
      .def("__repr__", [](const OperatorMatrix& A) {
        return "OperatorMatrix('" + A.label + "', " + std::to_string(A.rows()) + "x" +
               std::to_string(A.cols()) + ")";
      });

  py::class_<SpectrumResult>(m, "SpectrumResult")
      .def_property_readonly("values", [](const SpectrumResult& s) { return s.values; })
      .def_readonly("level", &SpectrumResult::level)
      .def_readonly("label", &SpectrumResult::label)
      .def("__len__", &SpectrumResult::length);

  py::class_<DecayFit>(m, "DecayFit")
      .def_readonly("model", &DecayFit::model)
      .def_readonly("theta", &DecayFit::theta)
      .def_readonly("beta", &DecayFit::beta)
      .def_readonly("gamma_kappa", &DecayFit::gamma_kappa)
      .def_readonly("residual", &DecayFit::residual)
      .def("predict", &DecayFit::predict, py::arg("n"));

  py::class_<SpectrumComparison>(m, "SpectrumComparison")
      .def_readonly("ratio_sup", &SpectrumComparison::ratio_sup)
      .def_readonly("ratio_trend", &SpectrumComparison::ratio_trend)
      .def_readonly("ratios", &SpectrumComparison::ratios);

  py::class_<FactorizationWitness>(m, "FactorizationWitness")
      .def_readonly("R", &FactorizationWitness::R)
      .def_readonly("S", &FactorizationWitness::S)
      .def_readonly("sigma", &FactorizationWitness::sigma)
      .def_readonly("residual", &FactorizationWitness::residual)
      .def_readonly("orthogonality_defect", &FactorizationWitness::orthogonality_defect)
      .def_readonly("rank", &FactorizationWitness::rank);

  py::class_<PolarDecomposition>(m, "PolarDecomposition")
      .def_readonly("abs_A", &PolarDecomposition::abs_A)
      .def_readonly("U", &PolarDecomposition::U);

  py::class_<DouglasEstimate>(m, "DouglasEstimate")
      .def_readonly("levels", &DouglasEstimate::levels)
      .def_readonly("constants", &DouglasEstimate::constants)
      .def_property_readonly("classification", [](const DouglasEstimate& d) {
        return std::string(to_string(d.classification));
      });

  py::class_<CodimReport>(m, "CodimReport")
      .def_readonly("c_lower", &CodimReport::c_lower)
      .def_readonly("holds", &CodimReport::holds)
      .def_readonly("ratio_window", &CodimReport::ratio_window);

  py::class_<ProbeReport>(m, "ProbeReport")
      .def_readonly("max_ratio", &ProbeReport::max_ratio)
      .def_readonly("attained_label", &ProbeReport::attained_label)
      .def_readonly("attained_n", &ProbeReport::attained_n)
      .def_readonly("member_max", &ProbeReport::member_max)
      .def_readonly("noise_flag", &ProbeReport::noise_flag);

  py::class_<OrderingVerdict>(m, "OrderingVerdict")
      .def_readonly("relation", &OrderingVerdict::relation)
      .def_readonly("reversed", &OrderingVerdict::reversed)
      .def_readonly("evidence", &OrderingVerdict::evidence);

  py::class_<GeneratorFamily>(m, "GeneratorFamily")
      .def_readonly("omega", &GeneratorFamily::omega)
      .def("eval", &GeneratorFamily::eval, py::arg("lam"), py::arg("alpha"));

  py::class_<RegularizationProfile>(m, "RegularizationProfile")
      .def_readonly("alphas", &RegularizationProfile::alphas)
      .def_readonly("norms", &RegularizationProfile::norms)
      .def_readonly("errors", &RegularizationProfile::errors)
      .def_property_readonly("classification", [](const RegularizationProfile& p) {
        return std::string(to_string(p.classification));
      });

  py::class_<MultiplierSpec>(m, "MultiplierSpec")
      .def_readonly("name", &MultiplierSpec::name)
      .def("__call__", [](const MultiplierSpec& f, double t) { return f.eval(t); });

  py::class_<QuotientReport>(m, "QuotientReport")
      .def_readonly("sup_ratio", &QuotientReport::sup_ratio)
      .def_readonly("attained_near", &QuotientReport::attained_near)
      .def_readonly("both_directions", &QuotientReport::both_directions)
      .def_readonly("verdict", &QuotientReport::verdict)
      .def_readonly("forward_sups", &QuotientReport::forward_sups)
      .def_readonly("backward_sups", &QuotientReport::backward_sups);

  // gallery
  m.def("build_gallery", &build_gallery, py::arg("identifier"), py::arg("N"));
  m.def("build_integration",
        [](int order, int N) { return build_integration(order, GridSpec::unit_interval(N)); },
        py::arg("m"), py::arg("N"));
  m.def("build_embedding_surrogate", &build_embedding_surrogate, py::arg("k"), py::arg("dim"),
        py::arg("N"));
  m.def("build_hausdorff",
        [](int rows, int n) {
          return build_hausdorff(rows, GridSpec::unit_interval(n, Scheme::LegendreBasis));
        },
        py::arg("rows"), py::arg("n"));
  m.def("build_mixed_integration", &build_mixed_integration, py::arg("N"));
  m.def("make_multiplier", &make_multiplier, py::arg("name"));
  m.def("build_multiplication", &build_multiplication, py::arg("f"), py::arg("grid"));

  // spectral analysis
  m.def("compute_spectrum", &compute_spectrum, py::arg("A"));
  m.def("fit_decay", &fit_decay, py::arg("spectrum"), py::arg("window"));
  m.def("compare_spectra", &compare_spectra, py::arg("s_A_prime"), py::arg("s_A"),
        py::arg("window"));
  m.def("verdict_from_comparison", &verdict_from_comparison, py::arg("forward"),
        py::arg("backward"));
  m.def("default_window", &default_window, py::arg("length"));

  // ordering
  m.def("build_witness", &build_witness, py::arg("A_prime"), py::arg("A"), py::arg("rank"));
  m.def("polar_absolute", &polar_absolute, py::arg("A"));
  m.def("douglas_constant",
        [](const std::string& id_prime, const std::string& id_a, const std::vector<int>& levels) {
          return douglas_constant([&](int N) { return build_gallery(id_prime, N); },
                                  [&](int N) { return build_gallery(id_a, N); }, levels);
        },
        py::arg("identifier_A_prime"), py::arg("identifier_A"), py::arg("levels"));
  m.def("codim_lemma_check", &codim_lemma_check, py::arg("A"), py::arg("m"), py::arg("window"));
  m.def("left_inverse_ratio_probe", &left_inverse_ratio_probe, py::arg("T"), py::arg("family"),
        py::arg("window") = std::nullopt);
  m.def("pair_verdict",
        [](const SpectrumResult& sp, const SpectrumResult& sa, IndexRange w) {
          return pair_verdict(sp, sa, w);
        },
        py::arg("s_A_prime"), py::arg("s_A"), py::arg("window"));

  // regularization
  m.def("parse_generator", &parse_generator, py::arg("name"), py::arg("omega") = 0.0);
  m.def("default_alpha_grid", &default_alpha_grid);
  m.def("dichotomy_probe",
        [](const OperatorMatrix& Ap, const OperatorMatrix& A, const GeneratorFamily& fam,
           const std::vector<double>& alphas) {
          return dichotomy_probe(Ap, A, std::nullopt, fam, alphas);
        },
        py::arg("A_prime"), py::arg("A"), py::arg("family"), py::arg("alphas"));
  m.def("pointwise_dichotomy",
        [](const OperatorMatrix& A, const Vector& y, const GeneratorFamily& fam,
           const std::vector<double>& alphas, std::optional<Vector> x0) {
          return pointwise_dichotomy(A, y, fam, alphas, x0);
        },
        py::arg("A"), py::arg("y"), py::arg("family"), py::arg("alphas"),
        py::arg("x0") = std::nullopt);

  // multipliers
  m.def("quotient_verdict",
        [](const MultiplierSpec& fp, const MultiplierSpec& f, bool half_line,
           const std::vector<int>& levels) {
          GridSpec grid =
              half_line ? GridSpec::half_line(1001, 10.0) : GridSpec::unit_interval(2001);
          return quotient_verdict(fp, f, grid, levels);
        },
        py::arg("f_prime"), py::arg("f"), py::arg("half_line") = false,
        py::arg("levels") = std::vector<int>{0, 1, 2});

  // hausdorff composition (extended precision path)
  m.def("hausdorff_composition_singular_values", &hausdorff_composition_singular_values,
        py::arg("n"));
  m.def("integration_legendre_singular_values", &integration_legendre_singular_values,
        py::arg("n"));

  // experiments
  m.def("run_experiment_file",
        [](const std::string& config_path, const std::string& out_dir) {
          ExperimentConfig cfg = parse_config_file(config_path);
          if (!out_dir.empty()) cfg.output_dir = out_dir;
          VerdictReport rep = run_experiment(cfg);
          return rep.out_dir + "/report.json";
        },
        py::arg("config_path"), py::arg("out_dir") = std::string());
}
