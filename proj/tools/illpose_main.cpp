// SPDX-License-Identifier: MIT
//
// illpose <experiment> --config <file> [--out <dir>] [--levels 64,128,256]
//                      [--window a:b] [--family tikhonov|cutoff|landweber]
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <sstream>

#include "illpose/experiment.hpp"

using namespace illpose;

int main(int argc, char** argv) {
  CLI::App app{"illpose - partial ordering of discretized ill-posed operators"};
  app.require_subcommand(1);

  std::string config_path, out_dir, levels_str, window_str, family_str;
  std::vector<CLI::App*> subs;
  for (const char* name : {"spectrum", "compare", "factorize", "douglas", "dichotomy",
                           "multiplier", "codim", "paper-suite"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config file (key = value lines)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--levels", levels_str, "comma-separated discretization levels");
    sub->add_option("--window", window_str, "index window a:b");
    sub->add_option("--family", family_str, "generator family");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    cfg.experiment = parse_experiment_kind(app.get_subcommands().front()->get_name());
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!levels_str.empty()) {
      cfg.levels.clear();
      std::stringstream ss(levels_str);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.levels.push_back(std::stoi(item));
    }
    if (!window_str.empty()) {
      auto colon = window_str.find(':');
      if (colon == std::string::npos) throw ConfigError("window must be a:b");
      cfg.window = IndexRange{std::stoi(window_str.substr(0, colon)),
                              std::stoi(window_str.substr(colon + 1))};
    }
    if (!family_str.empty()) cfg.family = family_str;

    VerdictReport rep = run_experiment(cfg);
    std::printf("report: %s/report.json (%zu artifacts)\n", rep.out_dir.c_str(),
                rep.artifacts.size());
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const NumericalFailure& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
