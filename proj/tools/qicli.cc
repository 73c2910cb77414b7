// Copyright 2026 The qillum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qicli: sweeps, angle audit, Monte Carlo runs and time-tag replay.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qillum/config.h"
#include "qillum/emit.h"
#include "qillum/errors.h"
#include "qillum/photonsim.h"
#include "qillum/sweep.h"

namespace {

using namespace qillum;

std::string flag_for(const std::string& key) {
  if (key == "waveplate_convention") return "--convention";
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

const std::map<std::string, std::string> kHelp{
    {"pair_rate", "Heralded pair rate, 1/s"},
    {"noise_rate", "Background hit rate at the signal-path detectors, 1/s"},
    {"duration", "Acquisition time per angle setting, s"},
    {"coincidence_window", "Coincidence window (full width), s"},
    {"eta", "Object reflectivity in [0,1]"},
    {"depolarization_p", "Depolarizing strength p in [0,1]"},
    {"scheme", "Receiver: ni|int"},
    {"waveplate_convention", "Waveplate matrix: rotation|hwp"},
    {"normalization", "Analytic normalization: per-trial|post-selected"},
    {"theta", "Fixed setting theta (rad; 'pi/16' style accepted)"},
    {"delta", "Fixed setting delta"},
    {"theta_p", "Fixed setting theta'"},
    {"delta_p", "Fixed setting delta'"},
    {"herald_efficiency", "Herald detection efficiency in [0,1]"},
    {"signal_efficiency", "Signal detection efficiency in [0,1]"},
    {"seed", "Master RNG seed"},
    {"denominator", "Estimator denominator: heralds|detected|paper-sum"},
    {"repeats", "Monte Carlo repeats per estimate"},
    {"error_model", "Sigma from: repeats|poisson"},
    {"resolution", "Optimizer grid step, rad"},
    {"engines", "analytic|montecarlo|both"},
    {"grid", "Comma-separated sweep values"},
    {"signal_fraction", "Signal fraction in (0,1]; sets noise_rate"},
};

struct Common {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  std::string out_path;
  std::string format = "csv";

  void attach(CLI::App* app) {
    for (const std::string& key : config_keys()) {
      options[key] = app->add_option(flag_for(key), values[key], kHelp.at(key));
    }
    app->add_option("--config", config_path,
                    "key = value scenario file; flags override it");
    app->add_option("--out", out_path, "Output file (default: stdout)");
    app->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  RunConfig resolve(const std::vector<double>& default_grid) const {
    RunConfig cfg;
    cfg.grid = default_grid;
    if (!config_path.empty()) apply_settings(cfg, load_config_file(config_path));
    for (const std::string& key : config_keys()) {
      if (options.at(key)->count() > 0) apply_setting(cfg, key, values.at(key));
    }
    return cfg;
  }

  void write(const std::vector<SweepRow>& rows) const {
    const Format f = parse_format(format);
    if (out_path.empty()) {
      std::cout << format_rows(rows, f);
    } else {
      emit(rows, f, out_path);
    }
  }
};

int run_sweep_command(const Common& common, SweepKind kind,
                      const std::vector<double>& default_grid) {
  const RunConfig cfg = common.resolve(default_grid);
  SweepSpec spec{kind, cfg.grid, cfg};
  common.write(run_sweep(spec));
  return 0;
}

void print_tables(std::ostream& out, const std::array<CoincidenceTable, 4>& t) {
  out << "setting  C15  C25  C35  C45  N5\n";
  for (std::size_t k = 0; k < 4; ++k) {
    out << (k + 1);
    for (std::uint64_t c : t[k].coincidences) out << "  " << c;
    out << "  " << t[k].heralds << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum illumination with polarization-path entangled single "
               "photons: analytic CHSH engine and Monte Carlo coincidence "
               "simulator"};
  app.require_subcommand(1);

  Common eta_c, noise_c, vis_c, audit_c, mc_c, replay_c;
  auto* eta = app.add_subcommand("sweep-eta", "S_max versus reflectivity");
  eta_c.attach(eta);
  auto* noise = app.add_subcommand("sweep-noise", "S_max versus signal fraction");
  noise_c.attach(noise);
  auto* vis = app.add_subcommand("sweep-visibility",
                                 "S_max versus signal-path polarization visibility");
  vis_c.attach(vis);
  auto* audit = app.add_subcommand(
      "angle-audit", "S at the quoted quad versus the optimizer, all conventions");
  audit_c.attach(audit);
  auto* mc = app.add_subcommand("mc-run", "One Monte Carlo CHSH estimate");
  mc_c.attach(mc);
  std::string export_dir;
  mc->add_option("--export-events", export_dir,
                 "Write repeat-0 event streams (setting1..4.tsv) to this directory");
  auto* replay = app.add_subcommand(
      "replay", "Coincidences and S from four external time-tag files");
  replay_c.attach(replay);
  std::vector<std::string> inputs;
  replay->add_option("--input", inputs,
                     "Time-tag file per setting, CHSH order (give 4)")
      ->required()
      ->expected(4);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eta) {
      std::vector<double> grid;
      for (int k = 0; k <= 10; ++k) grid.push_back(k / 10.0);
      return run_sweep_command(eta_c, SweepKind::eta, grid);
    }
    if (*noise) {
      return run_sweep_command(noise_c, SweepKind::noise,
                               {1.0, 0.5, 0.1, 0.05, 0.03, 0.02});
    }
    if (*vis) {
      return run_sweep_command(vis_c, SweepKind::visibility,
                               {1.0, 0.8, 0.6, 0.4, 0.2});
    }
    if (*audit) {
      const RunConfig cfg = audit_c.resolve({});
      const AuditReport report =
          angle_audit(cfg.experiment.scheme.scheme, cfg.resolution);
      std::cout << render_audit(report);
      if (!audit_c.out_path.empty()) audit_c.write(audit_rows(report));
      return 0;
    }
    if (*mc) {
      const RunConfig cfg = mc_c.resolve({});
      const SweepRow row = mc_run(cfg);
      mc_c.write({row});
      if (!export_dir.empty()) {
        ExperimentConfig x = cfg.experiment;
        x.angle_quad = row.quad;
        if (cfg.signal_fraction) {
          x.noise_rate = signal_fraction_to_noise_rate(x, *cfg.signal_fraction).noise_rate;
        }
        std::filesystem::create_directories(export_dir);
        for (std::size_t k = 0; k < 4; ++k) {
          std::ostringstream text;
          write_events(text, generate_events(x, k, 0));
          write_file_atomic(
              (std::filesystem::path(export_dir) /
               ("setting" + std::to_string(k + 1) + ".tsv"))
                  .string(),
              text.str());
        }
      }
      return 0;
    }
    if (*replay) {
      const RunConfig cfg = replay_c.resolve({});
      std::array<CoincidenceTable, 4> tables;
      for (std::size_t k = 0; k < 4; ++k) {
        std::ifstream in(inputs[k]);
        if (!in) throw IoError("cannot open " + inputs[k]);
        tables[k] = count_coincidences(read_events(in),
                                       cfg.experiment.coincidence_window);
      }
      const SEstimate est =
          estimate_S_from_tables(tables, cfg.estimate.denominator);
      SweepRow row;
      row.sweep_kind = "replay";
      row.sweep_value = cfg.experiment.coincidence_window;
      row.scheme = cfg.experiment.scheme.scheme;
      row.convention = cfg.experiment.scheme.convention;
      row.normalization = std::string(to_string(cfg.estimate.denominator));
      row.s = est.s_hat;
      row.s_sigma = est.sigma;
      row.quad = cfg.experiment.angle_quad;
      row.e = est.e_hat;
      if (!replay_c.out_path.empty()) print_tables(std::cout, tables);
      replay_c.write({row});
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "qicli: error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
