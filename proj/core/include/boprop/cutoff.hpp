#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "boprop/grid.hpp"

namespace boprop {

// --- mollifier -------------------------------------------------------------

/// Normalized bump rho(x) = C exp(1/(x^2 - 1)) on |x| < 1, zero elsewhere,
/// with C fixed so that rho integrates to one.
double mollifier_rho(double x);
/// The normalization constant C.
double mollifier_normalization();
/// Mass of rho over [a, b] (clipped to [-1, 1]); exactly 1 when the
/// interval covers the support. Relative accuracy is kept near the edges.
double mollifier_mass(double a, double b);
/// rho_tau(x) = rho(x / tau) / tau.
double mollifier_scaled(double x, double tau);

// --- two-parameter cut-off family -----------------------------------------

/// (eps, b) with eps > 0 and b >= 5 eps. `shift` and `speed` describe a
/// moving window: the family is evaluated at x - shift + speed * t.
struct CutoffParams {
  double eps = 0.1;
  double b = 0.5;
  double shift = 0.0;
  double speed = 0.0;

  void validate() const;
  /// Slope of the linear ramp, 1 / (b - 3 eps).
  double ramp_slope() const { return 1.0 / (b - 3.0 * eps); }
};

/// Piecewise-linear ramp: 0 up to 2 eps, slope 1/(b - 3 eps) up to b - eps,
/// then 1.
double ramp_nu(double x, const CutoffParams& p);

/// chi = rho_eps * nu and its companions. chi' and chi'' are evaluated under
/// the convolution integral (nu' is a box, so chi'' is a difference of two
/// scaled bumps); eta = sqrt(chi').
struct CutoffSamples {
  std::vector<double> chi, chi_prime, chi_second, eta, eta_prime;
};

class CutoffFamily {
 public:
  explicit CutoffFamily(CutoffParams p);

  const CutoffParams& params() const noexcept { return p_; }

  double chi(double x) const;
  double chi_prime(double x) const;
  double chi_second(double x) const;
  double eta(double x) const;
  double eta_prime(double x) const;

  /// Moving-window evaluation chi(x - shift + speed * t).
  double chi_at(double x, double t) const { return chi(x - p_.shift + p_.speed * t); }

  /// Samples at grid points x_i - anchor + speed * t with `anchor` the
  /// window anchor. Results are memoized per (grid, argument offset).
  CutoffSamples sample(const Grid& grid, double offset) const;

 private:
  CutoffParams p_;
  mutable std::mutex cache_mu_;
  mutable std::unordered_map<std::string, std::shared_ptr<const CutoffSamples>> cache_;
};

// --- certification ---------------------------------------------------------

struct PropertyCheck {
  std::string id;
  std::string description;
  bool passed = false;
  double observed = 0.0;  ///< worst observed value (violation, or constant)
  double bound = 0.0;     ///< the threshold it is compared with
};

struct FdLadderLevel {
  double step = 0.0;
  std::vector<double> max_divided_difference;  ///< orders 1..4
};

struct CutoffReport {
  CutoffParams params;
  double probe_spacing = 0.0;
  double tolerance = 1e-8;
  double identity_tolerance = 1e-10;
  double chi_at_3eps = 0.0;
  double cl_constant_2 = 0.0;
  double cl_constant_3 = 0.0;
  std::vector<PropertyCheck> checks;
  std::vector<FdLadderLevel> eta_ladder;
  bool all_passed() const;
};

/// Certifies supports, slope bounds, the lower bound at 3 eps, the global
/// slope bound, the three comparison relations between nested families,
/// monotonicity, eta^2 = chi', and a finite-difference smoothness ladder for
/// eta. The probe covers [x_left, x_right) of `probe`, whose spacing must
/// resolve eps (h <= eps / 20).
CutoffReport verify_family(const CutoffParams& p, const Grid& probe);

/// Probe grid covering [-eps, b + 2 eps] at spacing <= eps / 20.
GridPtr default_probe(const CutoffParams& p);

}  // namespace boprop
