// SPDX-License-Identifier: MIT
#include "illpose/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "illpose/csv.hpp"
#include "illpose/gallery.hpp"
#include "illpose/hausdorff.hpp"
#include "illpose/multiplier.hpp"

namespace illpose {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- utilities

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == '/' || c == '\\' || c == ' ') c = '-';
  return out;
}

void ensure_dir(const std::string& path) { fs::create_directories(path); }

// deterministic dump: every float printed with 17 significant digits
void dump_json(const ojson& j, std::string& out, int indent) {
  auto pad = [&](int n) { out.append(static_cast<size_t>(n) * 2, ' '); };
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        pad(indent + 1);
        out += ojson(it.key()).dump();
        out += ": ";
        dump_json(it.value(), out, indent + 1);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      pad(indent);
      out += '}';
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        pad(indent + 1);
        dump_json(j[i], out, indent + 1);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      pad(indent);
      out += ']';
      return;
    }
    case ojson::value_t::number_float: {
      double v = j.get<double>();
      if (std::isfinite(v))
        out += format_float(v);
      else
        out += ojson(format_float(v)).dump();  // "inf" sentinel, kept valid JSON
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

std::string dump_json(const ojson& j) {
  std::string out;
  dump_json(j, out, 0);
  out += '\n';
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

// ------------------------------------------------------------- json records

ojson range_to_json(IndexRange w) { return ojson{{"lo", w.lo}, {"hi", w.hi}}; }

ojson fit_to_json(const DecayFit& f) {
  ojson j;
  j["model"] = to_string(f.model);
  switch (f.model) {
    case FitModel::Power:
      j["theta"] = f.theta;
      break;
    case FitModel::Polylog:
      j["theta"] = f.theta;
      j["beta"] = f.beta;
      break;
    case FitModel::Exponential:
      j["gamma"] = f.gamma_kappa.first;
      j["kappa"] = f.gamma_kappa.second;
      break;
  }
  j["log_c"] = f.log_c;
  j["residual"] = f.residual;
  j["window"] = range_to_json(f.window);
  return j;
}

ojson comparison_to_json(const SpectrumComparison& c) {
  ojson j;
  j["ratio_sup"] = c.ratio_sup;
  j["ratio_trend"] = to_string(c.ratio_trend);
  j["window"] = range_to_json(c.window);
  return j;
}

ojson verdict_record_to_json(const VerdictRecord& r) {
  ojson j;
  j["first"] = r.first;
  j["second"] = r.second;
  j["relation"] = to_string(r.verdict.relation);
  j["more_ill_posed"] = r.verdict.reversed ? r.second : r.first;
  if (r.verdict.relation == Relation::Undecided || r.verdict.relation == Relation::Incomparable)
    j["more_ill_posed"] = nullptr;
  if (r.verdict.relation == Relation::Equivalent) j["more_ill_posed"] = "both";
  j["evidence"] = r.verdict.evidence;
  j["window"] = range_to_json(r.window);
  j["forward"] = comparison_to_json(r.forward);
  j["backward"] = comparison_to_json(r.backward);
  if (r.witness_dir) {
    j["witness"] = ojson{{"dir", *r.witness_dir},
                         {"residual", *r.witness_residual},
                         {"orthogonality_defect", *r.witness_defect}};
  }
  return j;
}

ojson profile_to_json(const ProfileRecord& p) {
  ojson j;
  j["name"] = p.name;
  j["alphas"] = p.profile.alphas;
  j["norms"] = p.profile.norms;
  if (!p.profile.errors.empty()) j["errors"] = p.profile.errors;
  j["classification"] = to_string(p.profile.classification);
  return j;
}

ojson douglas_to_json(const DouglasRecord& d) {
  ojson j;
  j["name"] = d.name;
  j["levels"] = d.estimate.levels;
  j["constants"] = d.estimate.constants;
  j["classification"] = to_string(d.estimate.classification);
  return j;
}

// --------------------------------------------------------------- structures

std::optional<SvdTriple> structured_svd(const OperatorMatrix& A) {
  if (A.label == "J2") {
    OperatorMatrix base = build_integration(1, GridSpec::unit_interval(A.grid.n_points));
    return kron_square_svd(full_svd(base.entries, base.label));
  }
  if (A.grid.scheme == Scheme::DiagonalSurrogate) return sorted_diagonal_svd(A.entries);
  return std::nullopt;
}

FactorizationWitness witness_for(const OperatorMatrix& A_prime, const OperatorMatrix& A,
                                 int rank) {
  const Eigen::Index big = 1500;
  if (std::max({A_prime.rows(), A_prime.cols(), A.rows(), A.cols()}) < big)
    return build_witness(A_prime, A, rank);
  auto sp = structured_svd(A_prime);
  auto sa = structured_svd(A);
  if (!sp || !sa)
    throw NumericalFailure(A_prime.label + "/" + A.label,
                           "witness at this scale needs a structured SVD");
  return build_witness_from_svds(*sp, *sa, rank, A_prime.entries, A.entries);
}

// witness bundle: R.csv, S.csv, sigma.csv + certificate.json; matrices are
// skipped above the export size cap (the certificate records everything the
// acceptance checks need)
std::string export_witness(const std::string& dir, const FactorizationWitness& w,
                           double s1_prime, std::vector<std::string>& artifacts) {
  ensure_dir(dir);
  const Eigen::Index export_cap = 1024;
  if (std::max(w.R.rows(), w.S.rows()) <= export_cap) {
    write_matrix_csv(dir + "/R.csv", w.R);
    write_matrix_csv(dir + "/S.csv", w.S);
    artifacts.push_back(dir + "/R.csv");
    artifacts.push_back(dir + "/S.csv");
  }
  {
    std::vector<double> idx(w.sigma.size()), val(w.sigma.size());
    for (Eigen::Index i = 0; i < w.sigma.size(); ++i) {
      idx[i] = double(i + 1);
      val[i] = w.sigma(i);
    }
    write_columns_csv(dir + "/sigma.csv", {"i", "sigma_i"}, {idx, val});
    artifacts.push_back(dir + "/sigma.csv");
  }
  ojson cert;
  cert["rank"] = w.rank;
  cert["residual"] = w.residual;
  cert["orthogonality_defect"] = w.orthogonality_defect;
  cert["tolerance"] = 1e-8 * s1_prime;
  write_text(dir + "/certificate.json", dump_json(cert));
  artifacts.push_back(dir + "/certificate.json");
  return dir;
}

std::string spectrum_csv_path(const std::string& dir, const SpectrumResult& s) {
  return dir + "/spectrum_" + sanitize(s.label) + "_" + std::to_string(s.level) + ".csv";
}

void export_spectrum(const std::string& dir, const SpectrumResult& s,
                     std::vector<std::string>& artifacts) {
  std::vector<double> n(s.length()), v(s.length());
  for (int i = 0; i < s.length(); ++i) {
    n[i] = i + 1;
    v[i] = s.values(i);
  }
  std::string path = spectrum_csv_path(dir, s);
  write_columns_csv(path, {"n", "s_n"}, {n, v});
  artifacts.push_back(path);
}

int pick_level(const ExperimentConfig& cfg, int fallback) {
  return cfg.levels.empty() ? fallback : cfg.levels.back();
}

// --------------------------------------------------------- experiment parts

void add_compare_pair(VerdictReport& rep, const std::string& dir, const OperatorMatrix& first,
                      const OperatorMatrix& second, const SpectrumResult& s_first,
                      const SpectrumResult& s_second, IndexRange window,
                      std::optional<int> rank_opt) {
  VerdictRecord rec;
  rec.first = first.label;
  rec.second = second.label;
  rec.window = window;
  rec.forward = compare_spectra(s_first, s_second, window);
  rec.backward = compare_spectra(s_second, s_first, window);
  rec.verdict = pair_verdict(s_first, s_second, window,
                             std::make_pair(first.kind, second.kind));

  bool ordered = rec.verdict.relation == Relation::MoreIllPosed ||
                 rec.verdict.relation == Relation::StrictlyMoreIllPosed;
  if (ordered) {
    const OperatorMatrix& mp = rec.verdict.reversed ? second : first;
    const OperatorMatrix& base = rec.verdict.reversed ? first : second;
    const SpectrumResult& s_base = rec.verdict.reversed ? s_first : s_second;
    const SpectrumResult& s_mp = rec.verdict.reversed ? s_second : s_first;
    int max_rank = std::min<int>(static_cast<int>(std::min(mp.rows(), mp.cols())),
                                 static_cast<int>(std::min(base.rows(), base.cols())));
    int rank = rank_opt ? *rank_opt : std::max(1, std::min(max_rank, s_base.length() / 4));
    FactorizationWitness w = witness_for(mp, base, rank);
    std::string wdir =
        dir + "/witness_" + sanitize(mp.label) + "_vs_" + sanitize(base.label);
    export_witness(wdir, w, s_mp.at(1), rep.artifacts);
    rec.witness_dir = wdir;
    rec.witness_residual = w.residual;
    rec.witness_defect = w.orthogonality_defect;
    rec.verdict.witness = std::move(w);
  }
  rep.verdicts.push_back(std::move(rec));
}

void run_spectrum_experiment(VerdictReport& rep, const ExperimentConfig& cfg) {
  if (cfg.operators.empty()) throw ConfigError("spectrum experiment needs operators");
  std::vector<int> levels = cfg.levels.empty() ? std::vector<int>{512} : cfg.levels;
  for (const std::string& id : cfg.operators) {
    for (int N : levels) {
      OperatorMatrix A = build_gallery(id, N);
      SpectrumRecord r;
      r.spectrum = compute_spectrum(A);
      export_spectrum(rep.out_dir, r.spectrum, rep.artifacts);
      IndexRange w = cfg.window ? *cfg.window : default_window(r.spectrum.length());
      if (w.length() >= 8 && r.spectrum.at(w.hi) > 0.0) r.fit = fit_decay(r.spectrum, w);
      rep.spectra.push_back(std::move(r));
    }
  }
}

void run_compare_experiment(VerdictReport& rep, const ExperimentConfig& cfg) {
  if (cfg.operators.size() != 2) throw ConfigError("compare experiment needs two operators");
  int N = pick_level(cfg, 512);
  OperatorMatrix first = build_gallery(cfg.operators[0], N);
  OperatorMatrix second = build_gallery(cfg.operators[1], N);
  SpectrumResult s1 = compute_spectrum(first);
  SpectrumResult s2 = compute_spectrum(second);
  export_spectrum(rep.out_dir, s1, rep.artifacts);
  export_spectrum(rep.out_dir, s2, rep.artifacts);
  IndexRange w = cfg.window ? *cfg.window : default_window(std::min(s1.length(), s2.length()));
  add_compare_pair(rep, rep.out_dir, first, second, s1, s2, w, cfg.rank);
}

void run_factorize_experiment(VerdictReport& rep, const ExperimentConfig& cfg) {
  if (cfg.operators.size() != 2) throw ConfigError("factorize experiment needs two operators");
  int N = pick_level(cfg, 256);
  OperatorMatrix first = build_gallery(cfg.operators[0], N);
  OperatorMatrix second = build_gallery(cfg.operators[1], N);
  int max_rank = static_cast<int>(
      std::min({first.rows(), first.cols(), second.rows(), second.cols()}));
  int rank = cfg.rank ? *cfg.rank : std::max(1, max_rank / 4);
  FactorizationWitness w = witness_for(first, second, rank);
  std::string wdir = rep.out_dir + "/witness_" + sanitize(first.label) + "_vs_" +
                     sanitize(second.label);
  double s1p = compute_spectrum(first).values(0);
  export_witness(wdir, w, s1p, rep.artifacts);
  VerdictRecord rec;
  rec.first = first.label;
  rec.second = second.label;
  rec.window = {1, rank};
  rec.verdict.relation = Relation::MoreIllPosed;
  rec.verdict.evidence = {"factorization"};
  rec.witness_dir = wdir;
  rec.witness_residual = w.residual;
  rec.witness_defect = w.orthogonality_defect;
  rec.verdict.witness = std::move(w);
  rep.verdicts.push_back(std::move(rec));
}

void run_douglas_experiment(VerdictReport& rep, const ExperimentConfig& cfg) {
  if (cfg.operators.size() != 2) throw ConfigError("douglas experiment needs two operators");
  std::vector<int> levels = cfg.levels.empty() ? std::vector<int>{64, 128, 256} : cfg.levels;
  std::string id_prime = cfg.operators[0], id_a = cfg.operators[1];
  DouglasRecord rec;
  rec.name = id_prime + "_vs_" + id_a;
  rec.estimate = douglas_constant([&](int N) { return build_gallery(id_prime, N); },
                                  [&](int N) { return build_gallery(id_a, N); }, levels);
  rep.douglas.push_back(std::move(rec));
}

void run_dichotomy_experiment(VerdictReport& rep, const ExperimentConfig& cfg) {
  if (cfg.operators.size() != 2) throw ConfigError("dichotomy experiment needs two operators");
  int N = pick_level(cfg, 256);
  OperatorMatrix A_prime = build_gallery(cfg.operators[0], N);
  OperatorMatrix A = build_gallery(cfg.operators[1], N);
  GeneratorFamily family = parse_generator(cfg.family.value_or("tikhonov"));
  if (family.kind == GeneratorKind::Landweber) {
    double s1 = compute_spectrum(A).values(0);
    family.omega = 0.5 / (s1 * s1);
  }
  ProfileRecord rec;
  rec.name = cfg.operators[0] + "_given_" + cfg.operators[1] + "_" + to_string(family.kind);
  rec.profile = dichotomy_probe(A_prime, A, std::nullopt, family, default_alpha_grid());
  rep.profiles.push_back(std::move(rec));
}

void run_multiplier_experiment(VerdictReport& rep, const ExperimentConfig& cfg) {
  if (cfg.operators.size() != 2)
    throw ConfigError("multiplier experiment needs two multiplier names (f_prime, f)");
  MultiplierSpec fp = make_multiplier(cfg.operators[0]);
  MultiplierSpec f = make_multiplier(cfg.operators[1]);
  bool half_line = f.domain_kind == MeasureKind::InfiniteMeasureHalfLine;
  GridSpec grid = half_line ? GridSpec::half_line(1001, 10.0) : GridSpec::unit_interval(2001);
  QuotientReport q = quotient_verdict(fp, f, grid, {0, 1, 2});

  ojson extra;
  extra["f_prime"] = fp.name;
  extra["f"] = f.name;
  extra["sup_forward"] = q.both_directions.first;
  extra["sup_backward"] = q.both_directions.second;
  extra["attained_near"] = q.attained_near;
  extra["forward_sups"] = q.forward_sups;
  extra["backward_sups"] = q.backward_sups;
  extra["verdict"] = to_string(q.verdict);
  if (q.forward == DirectionBound::Bounded) {
    GridSpec pair_grid = half_line ? GridSpec::half_line(64, 100.0) : GridSpec::unit_interval(64);
    SelfadjointPair pair = build_selfadjoint_pair(fp, f, pair_grid);
    extra["factorization_residual"] = pair.residual;
    std::string path = rep.out_dir + "/S_" + sanitize(fp.name) + "_over_" + sanitize(f.name) +
                       ".csv";
    write_matrix_csv(path, pair.S.entries);
    rep.artifacts.push_back(path);
  }
  rep.extra_json = dump_json(extra);
}

void run_codim_experiment(VerdictReport& rep, const ExperimentConfig& cfg) {
  if (cfg.operators.size() != 1) throw ConfigError("codim experiment needs one operator");
  int N = pick_level(cfg, 256);
  OperatorMatrix A = build_gallery(cfg.operators[0], N);
  SpectrumResult s = compute_spectrum(A);
  int len = s.length();
  IndexRange w = cfg.window ? *cfg.window : IndexRange{4, std::max(8, len / 8)};
  if (2 * w.hi > len) w.hi = len / 2;
  CodimReport r = codim_lemma_check(A, cfg.m.value_or(1), w);
  ojson extra;
  extra["operator"] = A.label;
  extra["m"] = cfg.m.value_or(1);
  extra["window"] = range_to_json(w);
  extra["c_lower"] = r.c_lower;
  extra["holds"] = r.holds;
  extra["ratio_min"] = r.ratio_window.first;
  extra["ratio_max"] = r.ratio_window.second;
  rep.extra_json = dump_json(extra);
}

// ------------------------------------------------------------- paper suite

void run_paper_suite(VerdictReport& rep, const ExperimentConfig& cfg) {
  const std::string& root = rep.out_dir;
  auto stage_dir = [&](const std::string& name) {
    std::string d = root + "/" + name;
    ensure_dir(d);
    return d;
  };
  auto timed = [&](const std::string& name, auto&& fn) {
    double t0 = now_s();
    fn();
    rep.timings.push_back({name, now_s() - t0});
  };

  // spectra at the reference level, reused across stages
  std::map<std::string, SpectrumResult> spec512;

  timed("integration-rates", [&] {
    std::string dir = stage_dir("integration-rates");
    for (int m : {1, 2, 3}) {
      OperatorMatrix J = build_integration(m, GridSpec::unit_interval(512));
      SpectrumRecord r;
      r.spectrum = compute_spectrum(J);
      export_spectrum(dir, r.spectrum, rep.artifacts);
      r.fit = fit_decay(r.spectrum, {16, 128});
      spec512[J.label] = r.spectrum;
      rep.spectra.push_back(std::move(r));
    }
  });

  timed("embedding-comparisons", [&] {
    std::string dir = stage_dir("embedding-comparisons");
    for (int k : {1, 2, 3}) {
      OperatorMatrix E = build_embedding_surrogate(k, 1, 512);
      spec512[E.label] = compute_spectrum(E);
    }
    for (int k : {1, 2, 3})
      for (int m : {1, 2, 3}) {
        OperatorMatrix E = build_embedding_surrogate(k, 1, 512);
        OperatorMatrix J = build_integration(m, GridSpec::unit_interval(512));
        add_compare_pair(rep, dir, E, J, spec512.at(E.label), spec512.at(J.label), {16, 128},
                         std::nullopt);
      }
  });

  timed("mixed-integration", [&] {
    std::string dir = stage_dir("mixed-integration");
    OperatorMatrix J2 = build_mixed_integration(64);
    SpectrumRecord r;
    r.spectrum = compute_spectrum(J2);
    export_spectrum(dir, r.spectrum, rep.artifacts);
    r.fit = fit_decay(r.spectrum, {6, 256});
    SpectrumResult s_j2 = r.spectrum;
    rep.spectra.push_back(std::move(r));

    for (int k : {1, 2}) {
      OperatorMatrix E = build_embedding_surrogate(k, 2, 64);
      SpectrumResult s_e = compute_spectrum(E);
      if (k == 1)
        add_compare_pair(rep, dir, J2, E, s_j2, s_e, {6, 256}, std::nullopt);
      else
        add_compare_pair(rep, dir, E, J2, s_e, s_j2, {6, 256}, std::nullopt);
    }
  });

  timed("hausdorff-composition", [&] {
    std::string dir = stage_dir("hausdorff-composition");
    std::vector<std::pair<SpectrumResult, SpectrumResult>> probe_pairs;
    for (int N : {64, 128, 256}) {
      SpectrumResult s_comp;
      s_comp.values = hausdorff_composition_singular_values(N);
      s_comp.level = N;
      s_comp.label = "BH*Jleg";
      SpectrumResult s_leg;
      s_leg.values = integration_legendre_singular_values(N);
      s_leg.level = N;
      s_leg.label = "Jleg";
      export_spectrum(dir, s_comp, rep.artifacts);
      probe_pairs.push_back({s_leg, s_comp});
      if (N == 256) {
        SpectrumResult s_j = compute_spectrum(build_integration(1, GridSpec::unit_interval(256)));
        std::vector<double> n, ratio;
        for (int i = 1; i <= 64; ++i) {
          n.push_back(i);
          ratio.push_back(s_comp.at(i) / s_j.at(i));
        }
        std::string path = dir + "/ratio_BHJ_over_J_256.csv";
        write_columns_csv(path, {"n", "ratio"}, {n, ratio});
        rep.artifacts.push_back(path);
      }
    }
    // extended-precision spectra stay honest far below the double floor
    ProbeReport probe = ratio_probe_from_spectra(probe_pairs, std::nullopt, 1e-30);
    ojson extra;
    if (!rep.extra_json.empty()) extra = ojson::parse(rep.extra_json);
    ojson pj;
    pj["max_ratio"] = probe.max_ratio;
    pj["attained_label"] = probe.attained_label;
    pj["attained_n"] = probe.attained_n;
    ojson members = ojson::array();
    for (auto& [label, mx] : probe.member_max)
      members.push_back(ojson{{"label", label}, {"max_ratio", mx}});
    pj["members"] = members;
    pj["noise_flag"] = probe.noise_flag;
    extra["left_inverse_probe"] = pj;
    rep.extra_json = dump_json(extra);
  });

  timed("witness-transitivity", [&] {
    std::string dir = stage_dir("witness-transitivity");
    OperatorMatrix J1 = build_integration(1, GridSpec::unit_interval(256));
    OperatorMatrix J2op = build_integration(2, GridSpec::unit_interval(256));
    OperatorMatrix J3op = build_integration(3, GridSpec::unit_interval(256));
    for (auto& [ap, a] : std::vector<std::pair<const OperatorMatrix*, const OperatorMatrix*>>{
             {&J2op, &J1}, {&J3op, &J2op}, {&J3op, &J1}}) {
      FactorizationWitness w = witness_for(*ap, *a, 64);
      std::string wdir = dir + "/witness_" + sanitize(ap->label) + "_vs_" + sanitize(a->label);
      export_witness(wdir, w, compute_spectrum(*ap).values(0), rep.artifacts);
      VerdictRecord rec;
      rec.first = ap->label;
      rec.second = a->label;
      rec.window = {1, 64};
      rec.verdict.relation = Relation::MoreIllPosed;
      rec.verdict.evidence = {"factorization"};
      rec.witness_dir = wdir;
      rec.witness_residual = w.residual;
      rec.witness_defect = w.orthogonality_defect;
      rec.verdict.witness = std::move(w);
      rep.verdicts.push_back(std::move(rec));
    }
  });

  timed("douglas", [&] {
    auto jm = [](int m) {
      return [m](int N) { return build_integration(m, GridSpec::unit_interval(N)); };
    };
    DouglasRecord fwd;
    fwd.name = "J^m:2_vs_J^m:1";
    fwd.estimate = douglas_constant(jm(2), jm(1), {64, 128, 256});
    rep.douglas.push_back(std::move(fwd));
    DouglasRecord bwd;
    bwd.name = "J^m:1_vs_J^m:2";
    bwd.estimate = douglas_constant(jm(1), jm(2), {64, 128, 256});
    rep.douglas.push_back(std::move(bwd));
  });

  timed("dichotomy", [&] {
    OperatorMatrix J1 = build_integration(1, GridSpec::unit_interval(256));
    OperatorMatrix J2op = build_integration(2, GridSpec::unit_interval(256));
    for (auto kind : {GeneratorKind::Tikhonov, GeneratorKind::SpectralCutoff}) {
      GeneratorFamily fam{kind, 0.0};
      ProfileRecord fwd;
      fwd.name = std::string("J^m:2_given_J^m:1_") + to_string(kind);
      fwd.profile = dichotomy_probe(J2op, J1, std::nullopt, fam, default_alpha_grid());
      rep.profiles.push_back(std::move(fwd));
      ProfileRecord bwd;
      bwd.name = std::string("J^m:1_given_J^m:2_") + to_string(kind);
      bwd.profile = dichotomy_probe(J1, J2op, std::nullopt, fam, default_alpha_grid());
      rep.profiles.push_back(std::move(bwd));
    }
  });

  timed("multiplier", [&] {
    std::string dir = stage_dir("multiplier");
    ojson extra = rep.extra_json.empty() ? ojson::object() : ojson::parse(rep.extra_json);
    ojson quotients = ojson::array();
    auto run_pair = [&](const std::string& fp_name, const std::string& f_name) {
      MultiplierSpec fp = make_multiplier(fp_name);
      MultiplierSpec f = make_multiplier(f_name);
      bool half = f.domain_kind == MeasureKind::InfiniteMeasureHalfLine;
      GridSpec grid = half ? GridSpec::half_line(1001, 10.0) : GridSpec::unit_interval(2001);
      QuotientReport q = quotient_verdict(fp, f, grid, {0, 1, 2});
      ojson j;
      j["f_prime"] = fp_name;
      j["f"] = f_name;
      j["sup_forward"] = q.both_directions.first;
      j["sup_backward"] = q.both_directions.second;
      j["verdict"] = to_string(q.verdict);
      if (q.forward == DirectionBound::Bounded) {
        GridSpec pg = half ? GridSpec::half_line(64, 100.0) : GridSpec::unit_interval(64);
        SelfadjointPair pair = build_selfadjoint_pair(fp, f, pg);
        j["factorization_residual"] = pair.residual;
        std::string path = dir + "/S_" + sanitize(fp_name) + "_over_" + sanitize(f_name) + ".csv";
        write_matrix_csv(path, pair.S.entries);
        rep.artifacts.push_back(path);
      }
      quotients.push_back(j);
    };
    run_pair("linear:2", "linear:1");
    run_pair("exp-inv:1", "power:1");
    run_pair("inv-poly:2", "inv-poly:1");
    extra["multiplier_quotients"] = quotients;
    rep.extra_json = dump_json(extra);
  });

  timed("codim", [&] {
    ojson extra = rep.extra_json.empty() ? ojson::object() : ojson::parse(rep.extra_json);
    ojson rows = ojson::array();
    auto record = [&](const std::string& name, const OperatorMatrix& A, int m, IndexRange w) {
      CodimReport r = codim_lemma_check(A, m, w);
      rows.push_back(ojson{{"operator", name},
                           {"m", m},
                           {"c_lower", r.c_lower},
                           {"holds", r.holds},
                           {"ratio_min", r.ratio_window.first},
                           {"ratio_max", r.ratio_window.second}});
    };
    record("E^k:1:1", build_embedding_surrogate(1, 1, 256), 1, {1, 32});
    {
      OperatorMatrix geo;
      int N = 70;
      Matrix D = Matrix::Zero(N, N);
      for (int i = 0; i < N; ++i) D(i, i) = std::pow(2.0, -(i + 1));
      geo = {std::move(D), GridSpec::unit_interval(N, Scheme::DiagonalSurrogate), "diag-2^-n",
             OperatorKind::CompactModel};
      record("diag-2^-n", geo, 1, {1, 32});
    }
    record("J^m:1", build_integration(1, GridSpec::unit_interval(256)), 2, {4, 32});
    extra["codim"] = rows;
    rep.extra_json = dump_json(extra);
  });

  (void)cfg;
}

}  // namespace

// ------------------------------------------------------------------ public

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "spectrum") return ExperimentKind::Spectrum;
  if (name == "compare") return ExperimentKind::Compare;
  if (name == "factorize") return ExperimentKind::Factorize;
  if (name == "douglas") return ExperimentKind::Douglas;
  if (name == "dichotomy") return ExperimentKind::Dichotomy;
  if (name == "multiplier") return ExperimentKind::Multiplier;
  if (name == "codim") return ExperimentKind::Codim;
  if (name == "paper-suite") return ExperimentKind::PaperSuite;
  throw ConfigError("unknown experiment '" + name +
                    "'; valid: spectrum compare factorize douglas dichotomy multiplier codim "
                    "paper-suite");
}

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::Compare: return "compare";
    case ExperimentKind::Factorize: return "factorize";
    case ExperimentKind::Douglas: return "douglas";
    case ExperimentKind::Dichotomy: return "dichotomy";
    case ExperimentKind::Multiplier: return "multiplier";
    case ExperimentKind::Codim: return "codim";
    case ExperimentKind::PaperSuite: return "paper-suite";
  }
  return "spectrum";
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " is not key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key == "experiment") {
      cfg.experiment = parse_experiment_kind(val);
    } else if (key == "operators") {
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) cfg.operators.push_back(item);
      }
    } else if (key == "levels") {
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) cfg.levels.push_back(std::stoi(item));
      }
      for (size_t i = 1; i < cfg.levels.size(); ++i)
        if (cfg.levels[i] <= cfg.levels[i - 1])
          throw ConfigError("levels must be positive and increasing");
      if (!cfg.levels.empty() && cfg.levels.front() < 1)
        throw ConfigError("levels must be positive and increasing");
    } else if (key == "window") {
      size_t colon = val.find(':');
      if (colon == std::string::npos) throw ConfigError("window must be lo:hi");
      cfg.window = IndexRange{std::stoi(val.substr(0, colon)), std::stoi(val.substr(colon + 1))};
    } else if (key == "family") {
      cfg.family = val;
    } else if (key == "output_dir") {
      cfg.output_dir = val;
    } else if (key == "m") {
      cfg.m = std::stoi(val);
    } else if (key == "rank") {
      cfg.rank = std::stoi(val);
    } else {
      throw ConfigError("unknown config key '" + key + "' on line " + std::to_string(lineno));
    }
  }
  return cfg;
}

VerdictReport run_experiment(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  if (const char* seed = std::getenv("ILLPOSE_SEED")) cfg.seed_echo = seed;

  VerdictReport rep;
  rep.inputs = cfg;
  rep.out_dir = cfg.output_dir;
  ensure_dir(rep.out_dir);

  double t0 = now_s();
  switch (cfg.experiment) {
    case ExperimentKind::Spectrum: run_spectrum_experiment(rep, cfg); break;
    case ExperimentKind::Compare: run_compare_experiment(rep, cfg); break;
    case ExperimentKind::Factorize: run_factorize_experiment(rep, cfg); break;
    case ExperimentKind::Douglas: run_douglas_experiment(rep, cfg); break;
    case ExperimentKind::Dichotomy: run_dichotomy_experiment(rep, cfg); break;
    case ExperimentKind::Multiplier: run_multiplier_experiment(rep, cfg); break;
    case ExperimentKind::Codim: run_codim_experiment(rep, cfg); break;
    case ExperimentKind::PaperSuite: run_paper_suite(rep, cfg); break;
  }
  rep.timings.push_back({"total", now_s() - t0});

  render_plot_data(rep);

  write_text(rep.out_dir + "/report.json", report_to_json(rep));
  rep.artifacts.push_back(rep.out_dir + "/report.json");
  {
    ojson tj = ojson::object();
    for (auto& [name, secs] : rep.timings) tj[name] = secs;
    write_text(rep.out_dir + "/timings.json", dump_json(tj));
  }
  return rep;
}

void render_plot_data(VerdictReport& rep) {
  bool wrote = false;
  for (const SpectrumRecord& r : rep.spectra) {
    if (!r.fit) continue;
    std::vector<double> n, s, overlay;
    for (int i = 1; i <= r.spectrum.length(); ++i) {
      n.push_back(i);
      s.push_back(r.spectrum.at(i));
      overlay.push_back(r.fit->predict(i));
    }
    std::string path = rep.out_dir + "/plot_spectrum_" + sanitize(r.spectrum.label) + "_" +
                       std::to_string(r.spectrum.level) + ".csv";
    write_columns_csv(path, {"n", "s_n", "fit"}, {n, s, overlay});
    rep.artifacts.push_back(path);
    wrote = true;
  }
  for (const ProfileRecord& p : rep.profiles) {
    std::string path = rep.out_dir + "/plot_dichotomy_" + sanitize(p.name) + ".csv";
    write_columns_csv(path, {"alpha", "norm"}, {p.profile.alphas, p.profile.norms});
    rep.artifacts.push_back(path);
    wrote = true;
  }
  for (const DouglasRecord& d : rep.douglas) {
    std::vector<double> levels(d.estimate.levels.begin(), d.estimate.levels.end());
    std::string path = rep.out_dir + "/plot_douglas_" + sanitize(d.name) + ".csv";
    write_columns_csv(path, {"N", "C"}, {levels, d.estimate.constants});
    rep.artifacts.push_back(path);
    wrote = true;
  }
  if (!wrote && rep.spectra.empty() && rep.profiles.empty() && rep.douglas.empty() &&
      rep.verdicts.empty() && rep.extra_json.empty())
    std::fprintf(stderr, "warning: nothing to render for this report\n");
}

std::string report_to_json(const VerdictReport& rep) {
  ojson j;
  j["schema_version"] = rep.schema_version;
  ojson in;
  in["experiment"] = to_string(rep.inputs.experiment);
  in["operators"] = rep.inputs.operators;
  in["levels"] = rep.inputs.levels;
  if (rep.inputs.window) in["window"] = range_to_json(*rep.inputs.window);
  if (rep.inputs.family) in["family"] = *rep.inputs.family;
  in["output_dir"] = rep.inputs.output_dir;
  if (rep.inputs.m) in["m"] = *rep.inputs.m;
  if (rep.inputs.rank) in["rank"] = *rep.inputs.rank;
  if (rep.inputs.seed_echo) in["seed"] = *rep.inputs.seed_echo;
  j["inputs"] = in;

  ojson spectra = ojson::array();
  for (const SpectrumRecord& r : rep.spectra) {
    ojson s;
    s["label"] = r.spectrum.label;
    s["level"] = r.spectrum.level;
    s["length"] = r.spectrum.length();
    s["s1"] = r.spectrum.length() ? r.spectrum.at(1) : 0.0;
    if (r.fit) s["fit"] = fit_to_json(*r.fit);
    spectra.push_back(s);
  }
  j["spectra"] = spectra;

  ojson verdicts = ojson::array();
  for (const VerdictRecord& r : rep.verdicts) verdicts.push_back(verdict_record_to_json(r));
  j["verdicts"] = verdicts;

  ojson profiles = ojson::array();
  for (const ProfileRecord& p : rep.profiles) profiles.push_back(profile_to_json(p));
  j["profiles"] = profiles;

  ojson douglas = ojson::array();
  for (const DouglasRecord& d : rep.douglas) douglas.push_back(douglas_to_json(d));
  j["douglas"] = douglas;

  if (!rep.extra_json.empty()) j["results"] = ojson::parse(rep.extra_json);
  j["artifacts"] = rep.artifacts;
  return dump_json(j);
}

}  // namespace illpose
