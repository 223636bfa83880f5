#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "boprop/cli/config.hpp"

namespace boprop::cli {

/// Process exit codes; each failure mode has its own value.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,     ///< unreadable or invalid config, bad flags
  kExitBlowUp = 3,    ///< solution became non-finite or crossed the ceiling
  kExitSeam = 4,      ///< energy near the periodic seam above tolerance
  kExitVerify = 5,    ///< a verification command found a failing property
};

struct CommandOptions {
  std::filesystem::path out = "boprop-out";
  bool quiet = false;
};

struct WindowResult {
  WindowSpec spec;
  DiagnosticSeries series;
  double min_seam_margin = 0.0;  ///< smallest distance from tail cut to the right seam
  bool tail_rejected = false;    ///< some tail cut fell within 4h of the seam
};

struct SimulationResult {
  RunConfig config;
  double dt = 0.0;
  std::size_t steps = 0;
  std::vector<WindowResult> windows;
  ConservedQuantities baseline;
  double mass_drift = 0.0;
  double l2_relative_drift = 0.0;
  double hamiltonian_drift = 0.0;
  std::vector<double> sup_history;
  double max_seam_fraction = 0.0;
  bool seam_violated = false;
  bool blew_up = false;
  std::string blowup_message;
  double blowup_time = 0.0;
  double wall_seconds = 0.0;
};

/// Runs one simulation with diagnostics at every snapshot. When `out` is set
/// the fields selected by the config are dumped under out/fields.
SimulationResult run_simulation(const RunConfig& c, const std::optional<std::filesystem::path>& fields_dir = {});

/// Writes manifest.json, diagnostics.csv and optional plots for one run and
/// returns the exit code it maps to.
int write_run_artifacts(const SimulationResult& r, const std::filesystem::path& dir, const std::string& command);

int cmd_simulate(const RunConfig& c, const CommandOptions& o);
int cmd_sweep(const RunConfig& c, const CommandOptions& o);
int cmd_verify_cutoff(const RunConfig& c, const CommandOptions& o);
int cmd_verify_inequalities(const RunConfig& c, const CommandOptions& o);
int cmd_convergence(const RunConfig& c, const CommandOptions& o);

/// Least-squares slope of log|y| against log x.
double fitted_order(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace boprop::cli
