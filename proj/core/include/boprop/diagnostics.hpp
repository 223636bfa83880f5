#pragma once

#include <memory>
#include <string>
#include <vector>

#include "boprop/cutoff.hpp"
#include "boprop/grid.hpp"
#include "boprop/pde.hpp"

namespace boprop {

/// Moving window chi_{eps,b}(x - x0 + v t) applied to d_x^m u.
struct WindowSpec {
  int m = 2;
  double eps = 0.1;
  double b = 0.5;
  double v = 1.0;
  double x0 = 0.0;

  void validate() const;
  CutoffParams cutoff() const { return CutoffParams{eps, b, x0, v}; }
};

class Window {
 public:
  explicit Window(WindowSpec spec);

  const WindowSpec& spec() const noexcept { return spec_; }
  const CutoffFamily& family() const noexcept { return *family_; }
  /// chi, chi', ... sampled on `grid` at time t.
  CutoffSamples at(const Grid& grid, double t) const;

 private:
  WindowSpec spec_;
  std::shared_ptr<const CutoffFamily> family_;
};

/// int (d^m u)^2 chi
double windowed_energy(const RealField& u, const Window& w, double t);
/// int (D^{1/2} d^m u)^2 chi'
double smoothing_density(const RealField& u, const Window& w, double t);
/// int (D^{1/2}(d^m u eta))^2
double eta_smoothing_density(const RealField& u, const Window& w, double t);
/// int (D^{1/2}(d^m u chi))^2
double half_windowed_energy(const RealField& u, const Window& w, double t);
/// int (d^{m+1} u)^2 chi' chi
double gradient_flux_density(const RealField& u, const Window& w, double t);

struct TailEnergy {
  double value = 0.0;
  double cut = 0.0;          ///< x0 + eps - v t
  double seam_margin = 0.0;  ///< distance from the cut to the right seam
};

/// int_{cut}^{seam} (d^k u)^2 with cut = x0 + eps - v t. The right seam of the
/// periodic domain stands in for +infinity. Cuts within 4h of either end of
/// the domain are rejected.
TailEnergy tail_energy(const RealField& u, int k, double t, double eps, double v, double x0);

struct DiagnosticRecord {
  double t = 0.0;
  double E_m = 0.0;
  double F_half = 0.0;
  double F_eta = 0.0;
  double E_half = 0.0;
  double G_flux = 0.0;
  double tail = 0.0;
  double cum_F_half = 0.0;
  double cum_F_eta = 0.0;
  double cum_G_flux = 0.0;
};

/// Every density of one window at one snapshot (cumulative columns zero).
/// The tail uses order m and the window's eps, v and x0.
DiagnosticRecord diagnose(const RealField& u, const Window& w, double t);

/// Records in time order with trapezoid time integrals of F_half, F_eta and
/// G_flux. Steps are weighted by |dt| so the integrals are nondecreasing for
/// backward runs too.
class DiagnosticSeries {
 public:
  void append(DiagnosticRecord r);
  const std::vector<DiagnosticRecord>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }
  double sup_energy() const;
  double sup_tail() const;
  const DiagnosticRecord& back() const { return records_.back(); }

 private:
  std::vector<DiagnosticRecord> records_;
};

struct EnergyIdentityTerms {
  double half_dEdt = 0.0;
  double a1 = 0.0;  ///< (v/2) int (d^m u)^2 chi'
  double a2 = 0.0;  ///< int d^m(L u) d^m u chi
  double a3 = 0.0;  ///< int d^m(s u^k u_x) d^m u chi (zero when the nonlinearity is off)
  double residual = 0.0;
};

/// 1/2 dE/dt - A1 - A2 + A3 at the centre of three snapshots spaced by dt
/// (dt may be negative). dE/dt is a centred difference, so the residual is
/// O(dt^2) for a fourth-order integrator.
EnergyIdentityTerms energy_identity_residual(const RealField& prev, const RealField& cur, const RealField& next,
                                             double t, double dt, const Window& w, const PdeSpec& spec,
                                             bool dealias);

/// Share of int u^2 carried by the outer length/16 on each side of the seam.
double seam_energy_fraction(const RealField& u);

}  // namespace boprop
