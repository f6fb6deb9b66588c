#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ctns/config.hpp"
#include "ctns/initial.hpp"
#include "ctns/integrator.hpp"
#include "ctns/monitor.hpp"
#include "ctns/reporting.hpp"
#include "ctns/snapshot.hpp"

namespace ctns {

// CLI / orchestration exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_blow_up = 3;
inline constexpr int exit_property_failure = 4;

/// A monitored run: the integrator result plus the per-cadence diagnostics
/// records collected along the way.
struct Trajectory {
  RunResult core;
  std::vector<DiagnosticsRecord> records;
};

struct ExitReport {
  int exit_code = exit_ok;
  RunStatus status = RunStatus::completed;
  double final_time = 0.0;
  std::string csv_path;
  std::string summary_path;
  std::string checkpoint_prefix;
  std::vector<std::string> warnings;
};

/// Drive a monitored run: record diagnostics at the cadence (first and last
/// step always included), stream them to CSV, checkpoint as configured.
/// Blow-up preserves all diagnostics up to the failure.
inline Trajectory run_monitored(const State& s0, double t_end, double dt, const ModelParams& params,
                                const Monitor& monitor, long cadence,
                                const StepOptions& opts = {},
                                DiagnosticsCsvWriter* csv = nullptr,
                                const std::function<void(const State&, long)>& checkpoint_hook = {}) {
  Trajectory traj;
  const double span = t_end - s0.time();
  long total = (span > 0.0) ? static_cast<long>(std::ceil(span / dt - 1e-12)) : 0;
  if (span > 0.0 && total < 1) total = 1;

  auto observe = [&](const State& s, long step) {
    const bool due = (step % cadence == 0) || step == total;
    if (due) {
      const DiagnosticsRecord* prev = traj.records.empty() ? nullptr : &traj.records.back();
      traj.records.push_back(monitor.record(s, prev));
      if (csv) csv->write(traj.records.back());
    }
    if (checkpoint_hook) checkpoint_hook(s, step);
  };

  traj.core = run(s0, t_end, dt, params, observe, opts);
  return traj;
}

/// End-to-end orchestration behind the `run` CLI verb.
inline ExitReport run_simulation(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  ExitReport report;
  report.warnings = cfg.warnings;

  fs::create_directories(cfg.output_dir);
  const std::string base = cfg.output_dir + "/run";
  report.csv_path = base + ".csv";
  report.summary_path = base + ".summary";
  report.checkpoint_prefix = base + ".final";

  GridPtr grid = make_grid(cfg.dim, cfg.n);
  const ModelParams params = cfg.model_params();
  const Monitor monitor(grid, cfg.monitor, params);
  const State s0 = generate_initial(cfg.ic, grid);

  StepOptions opts;
  opts.dealias_products = !cfg.debug_disable_dealias;
  opts.cfl_warn_threshold = cfg.cfl_warn;

  DiagnosticsCsvWriter csv(report.csv_path);
  std::function<void(const State&, long)> ckpt_hook;
  if (cfg.checkpoint_every_steps > 0) {
    ckpt_hook = [&](const State& s, long step) {
      if (step > 0 && step % cfg.checkpoint_every_steps == 0)
        checkpoint_save(s, base + ".step" + std::to_string(step), cfg.dt, params, cfg.ic.seed);
    };
  }

  Trajectory traj =
      run_monitored(s0, cfg.t_end, cfg.dt, params, monitor, cfg.cadence, opts, &csv, ckpt_hook);
  csv.flush();

  for (const auto& w : traj.core.warnings) report.warnings.push_back(w);
  report.status = traj.core.status;
  if (traj.core.final_state) {
    report.final_time = traj.core.final_state->time();
    checkpoint_save(*traj.core.final_state, report.checkpoint_prefix, cfg.dt, params, cfg.ic.seed);
  }

  const bool blew = traj.core.status == RunStatus::blew_up;
  if (blew)
    report.warnings.push_back("blow-up at t = " + detail::fmt_g17(traj.core.blowup_time) +
                              "; partial diagnostics preserved");
  write_run_summary(report.summary_path, blew ? "blow_up" : "completed", cfg, traj.records,
                    report.warnings);
  report.exit_code = blew ? exit_blow_up : exit_ok;
  return report;
}

/// Resume from a checkpoint with the recorded dt (the step schedule of the
/// original run is part of the checkpoint contract).
inline ExitReport resume_simulation(const std::string& checkpoint_prefix, double t_end,
                                    RunConfig cfg) {
  const Checkpoint ck = checkpoint_load(checkpoint_prefix);
  cfg.dim = ck.state.grid().dim();
  cfg.n = ck.state.grid().n();
  cfg.chi = ck.params.chi;
  std::vector<double> grav(ck.params.grav.begin(), ck.params.grav.begin() + cfg.dim);
  cfg.grav = grav;
  cfg.dt = ck.dt;
  cfg.t_end = t_end;
  cfg.ic.seed = ck.seed;
  cfg.validate();

  namespace fs = std::filesystem;
  ExitReport report;
  report.warnings = cfg.warnings;
  fs::create_directories(cfg.output_dir);
  const std::string base = cfg.output_dir + "/resume";
  report.csv_path = base + ".csv";
  report.summary_path = base + ".summary";
  report.checkpoint_prefix = base + ".final";

  GridPtr grid = ck.state.grid_ptr();
  const Monitor monitor(grid, cfg.monitor, ck.params);
  StepOptions opts;
  opts.dealias_products = !cfg.debug_disable_dealias;
  opts.cfl_warn_threshold = cfg.cfl_warn;

  DiagnosticsCsvWriter csv(report.csv_path);
  Trajectory traj =
      run_monitored(ck.state, t_end, ck.dt, ck.params, monitor, cfg.cadence, opts, &csv, {});
  csv.flush();

  for (const auto& w : traj.core.warnings) report.warnings.push_back(w);
  report.status = traj.core.status;
  if (traj.core.final_state) {
    report.final_time = traj.core.final_state->time();
    checkpoint_save(*traj.core.final_state, report.checkpoint_prefix, ck.dt, ck.params, ck.seed);
  }
  const bool blew = traj.core.status == RunStatus::blew_up;
  write_run_summary(report.summary_path, blew ? "blow_up" : "completed", cfg, traj.records,
                    report.warnings);
  report.exit_code = blew ? exit_blow_up : exit_ok;
  return report;
}

/// Print snapshot metadata and the shell spectrum of the stored field.
inline void inspect_snapshot(const std::string& path, std::ostream& os, double r = 3.2) {
  auto [field, time] = read_snapshot(path);
  os << "path = " << path << "\n";
  os << "dim = " << field.grid().dim() << "\n";
  os << "n_per_axis = " << field.grid().n() << "\n";
  os << "components = " << field.components() << "\n";
  os << "time = " << detail::fmt_g17(time) << "\n";
  const SpectralField F = to_spectral(field);
  const DyadicBank bank(field.grid_ptr());
  write_shell_spectrum_csv(os, std::filesystem::path(path).filename().string(),
                           shell_spectrum(F, bank, r));
}

}  // namespace ctns
