#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "boprop/datum.hpp"
#include "boprop/diagnostics.hpp"
#include "boprop/evolution.hpp"
#include "boprop/inequalities.hpp"
#include "boprop/pde.hpp"

namespace boprop::cli {

/// Invalid configuration; `path()` is the offending key, e.g. "windows[0].b".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct GridSettings {
  std::size_t n = 1024;
  double length = 200.0;
  double x_left = -100.0;
};

struct SolverSettings {
  std::optional<double> dt;  ///< empty means "auto": stable_dt with `cfl`, signed like t_end
  double cfl = 0.1;
  double t_end = 0.5;
  Scheme scheme = Scheme::ETDRK4;
  bool dealias = true;
  int snapshot_stride = 5;
  double blowup_ceiling = 1e8;
};

enum class FieldDumps { None, Final, All };

struct OutputSettings {
  FieldDumps fields = FieldDumps::Final;
  bool plots = true;
};

/// One lattice axis group: keys zipped together, values index-aligned.
struct SweepGroup {
  std::vector<std::string> keys;
  std::vector<std::vector<double>> values;  ///< values[key][i]
  std::size_t size() const { return values.empty() ? 0 : values.front().size(); }
};

struct SweepSettings {
  std::vector<SweepGroup> lattice;
  unsigned workers = 0;  ///< 0 = hardware concurrency
};

struct ConvergenceSettings {
  std::vector<double> dt_ladder = {2e-3, 1e-3, 5e-4};
  std::vector<std::size_t> n_ladder = {256, 512, 1024};
  double probe_time = 0.25;
  std::size_t window = 0;
};

struct RunConfig {
  PdeSpec pde;
  GridSettings grid;
  SolverSettings solver;
  nlohmann::json datum;  ///< validated datum tree; tau_cells is resolved per grid
  std::vector<WindowSpec> windows;
  OutputSettings output;
  double seam_tolerance = 1e-8;
  std::uint64_t seed = 1;
  SweepSettings sweep;
  ConvergenceSettings convergence;
  InequalitySuiteConfig inequalities;
  std::vector<CutoffParams> cutoffs = {{0.1, 0.5}, {0.2, 1.0}, {0.05, 0.25}};
};

/// Parses and validates a config tree. Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
/// `source` is a file path or "preset:NAME".
RunConfig load_config(const std::string& source);

/// Full config with every default filled in; parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& c);
/// FNV-1a 64 of the canonical dump of to_json(c), as 16 hex digits.
std::string config_hash(const RunConfig& c);

std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names.
const std::string& preset_text(const std::string& name);

/// Applies one sweep key: eps, b, v, m to every window; n, dt to the solver;
/// tau_cells to the outermost mollified datum.
void apply_sweep_value(RunConfig& c, const std::string& key, double value);
/// Lattice points as (key, value) lists, in lattice-index order.
std::vector<std::vector<std::pair<std::string, double>>> expand_lattice(const SweepSettings& s);

/// Grid, datum and solver config resolved for one run.
GridPtr make_grid(const RunConfig& c);
DatumSpec resolve_datum(const RunConfig& c, const Grid& grid);
SolverConfig make_solver_config(const RunConfig& c, const RealField& u0);

}  // namespace boprop::cli
