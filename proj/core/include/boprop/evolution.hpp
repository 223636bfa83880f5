#pragma once

#include <functional>
#include <vector>

#include "boprop/datum.hpp"
#include "boprop/errors.hpp"
#include "boprop/pde.hpp"

namespace boprop {

enum class Scheme { ETDRK4, IFRK4 };

Scheme parse_scheme(const std::string& s);
std::string to_string(Scheme s);

struct SolverConfig {
  GridPtr grid;
  double dt = 1e-3;      ///< negative for backward-time runs
  double t_end = 1.0;    ///< same sign as dt
  Scheme scheme = Scheme::ETDRK4;
  bool dealias = true;
  int snapshot_stride = 1;
  double blowup_ceiling = 1e8;
  bool keep_fields = true;

  void validate() const;
  /// Steps needed to reach t_end; dt is shrunk (never grown) so that an
  /// integer number of steps lands on t_end exactly.
  std::size_t step_count() const;
  double effective_dt() const;
};

/// Time step from the advective CFL condition dt = cfl * h / max|u|^k.
/// The linear part is integrated exactly and imposes no restriction.
double stable_dt(const RealField& u0, const PdeSpec& spec, double cfl = 0.1);

struct SolverState {
  double t = 0.0;
  RealField u;
  ConservedQuantities baseline;
};

/// Precomputed exponential integrator for u_t = L u + N(u) on one grid and
/// time step. Works on spectra in slot order; the Nyquist slot is held at
/// zero.
class Stepper {
 public:
  Stepper(const PdeSpec& spec, GridPtr grid, double dt, Scheme scheme, bool dealias);

  void advance(std::vector<Complex>& v) const;
  SolverState step(const SolverState& s) const;

  double dt() const noexcept { return dt_; }
  const PdeSpec& spec() const noexcept { return spec_; }
  const Grid& grid() const noexcept { return *grid_; }
  bool dealiased() const noexcept { return dealias_; }

  /// Spectrum of N(u) for the spectrum v; also reports max|u|.
  void nonlinear(const std::vector<Complex>& v, std::vector<Complex>& out, double* sup = nullptr) const;
  std::vector<Complex> project(const RealField& u) const;

 private:
  PdeSpec spec_;
  GridPtr grid_;
  double dt_;
  Scheme scheme_;
  bool dealias_;
  std::vector<Complex> e_, e2_, q_, f1_, f2_, f3_;
  std::vector<Complex> nl_factor_;
  std::vector<bool> keep_;
};

SolverState initial_state(const RealField& u0, const PdeSpec& spec);
SolverState step(const SolverState& state, const SolverConfig& cfg, const PdeSpec& spec);

struct Snapshot {
  std::size_t step = 0;
  double t = 0.0;
  RealField u;
  ConservedQuantities invariants;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;  ///< fields dropped when keep_fields is off
  double dt = 0.0;                  ///< effective time step
  std::vector<double> sup_history;  ///< max|u| at every snapshot
  ConservedQuantities baseline;

  double max_mass_drift() const;
  double max_l2_relative_drift() const;
  double max_hamiltonian_drift() const;
};

using SnapshotHook = std::function<void(const Snapshot&)>;

/// Thrown by integrate on blow-up; carries the partial trajectory.
class TrajectoryBlowUp : public BlowUpError {
 public:
  TrajectoryBlowUp(const BlowUpError& e, Trajectory partial)
      : BlowUpError(e.what(), e.time(), e.sup_history()), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  Trajectory partial_;
};

/// Advances from u0 to cfg.t_end, recording a snapshot at t = 0, every
/// snapshot_stride steps, and at the final step. When dealiasing is on the
/// datum is first projected onto the surviving modes. `hook` sees every
/// snapshot as it is produced.
Trajectory integrate(const RealField& u0, const SolverConfig& cfg, const PdeSpec& spec, const SnapshotHook& hook = {});
Trajectory integrate(const DatumSpec& datum, const SolverConfig& cfg, const PdeSpec& spec,
                     const SnapshotHook& hook = {});

/// Drift oracle for the Hamiltonian's potential sign: integrates a generic
/// BO run at dt and dt/2 and keeps the candidate whose drift shrinks.
struct HamiltonianSignOracle {
  int sign = -1;
  double drift_coarse[2] = {0, 0};  ///< [+1, -1] candidates at dt
  double drift_fine[2] = {0, 0};    ///< [+1, -1] candidates at dt/2
};
HamiltonianSignOracle hamiltonian_sign_oracle();
int hamiltonian_potential_sign();

}  // namespace boprop
