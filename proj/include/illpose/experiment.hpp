// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_EXPERIMENT_HPP
#define ILLPOSE_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "illpose/ordering.hpp"
#include "illpose/regularization.hpp"
#include "illpose/spectrum.hpp"
#include "illpose/types.hpp"

namespace illpose {

/// Raised for malformed configs and unknown identifiers (CLI exit code 2;
/// numerical failures exit with 3).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ExperimentKind {
  Spectrum,
  Compare,
  Factorize,
  Douglas,
  Dichotomy,
  Multiplier,
  Codim,
  PaperSuite,
};

ExperimentKind parse_experiment_kind(const std::string& name);
const char* to_string(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Spectrum;
  std::vector<std::string> operators;  // gallery identifiers / multiplier names
  std::vector<int> levels;
  std::optional<IndexRange> window;
  std::optional<std::string> family;
  std::string output_dir = "out";
  std::optional<int> m;     // codim order
  std::optional<int> rank;  // witness rank
  std::optional<std::string> seed_echo;  // ILLPOSE_SEED, reserved and echoed
};

/// Flat key=value config, one experiment per file, arrays comma-separated.
ExperimentConfig parse_config_file(const std::string& path);

struct SpectrumRecord {
  SpectrumResult spectrum;
  std::optional<DecayFit> fit;
};

struct VerdictRecord {
  std::string first, second;
  IndexRange window{1, 1};
  OrderingVerdict verdict;
  SpectrumComparison forward, backward;
  std::optional<std::string> witness_dir;
  std::optional<double> witness_residual;
  std::optional<double> witness_defect;
};

struct ProfileRecord {
  std::string name;
  RegularizationProfile profile;
};

struct DouglasRecord {
  std::string name;
  DouglasEstimate estimate;
};

struct VerdictReport {
  std::string schema_version = "1.0";
  ExperimentConfig inputs;
  std::vector<SpectrumRecord> spectra;
  std::vector<VerdictRecord> verdicts;
  std::vector<ProfileRecord> profiles;
  std::vector<DouglasRecord> douglas;
  std::string extra_json;  // experiment-specific block, already serialized
  std::vector<std::string> artifacts;
  std::vector<std::pair<std::string, double>> timings;  // sidecar, not in report.json
  std::string out_dir;
};

/// Executes the configured experiment, writes CSV/JSON artifacts under the
/// output directory, and returns the report. report.json is byte-identical
/// across reruns of the same config; wall-clock timings go to timings.json.
VerdictReport run_experiment(const ExperimentConfig& config);

/// Emits plot-ready CSVs (log-log spectra with fitted overlays, alpha-norm
/// and level-constant tables) from an existing report. No-op with a warning
/// on reports without plottable data.
void render_plot_data(VerdictReport& report);

/// Serializes the report deterministically (all floats at 17 significant
/// digits).
std::string report_to_json(const VerdictReport& report);

}  // namespace illpose

#endif
