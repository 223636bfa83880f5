#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "boprop/grid.hpp"

namespace boprop {

struct DatumSpec;

/// amplitude * exp(-((x - center)/width)^2)
struct GaussianDatum {
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;
};

/// Solitary wave of speed c centred at x_c. On a grid this is sampled as the
/// exact periodic traveling wave of the grid's period (see periodic_soliton).
struct SolitonDatum {
  double c = 1.0;
  double x_c = 0.0;
};

/// amplitude * (x0 - x)_+^gamma * w(x) + background, with w a compact bump of
/// half-width bump_width and w(x0) = 1. Smooth on (x0, inf); for gamma < 3/2
/// the second derivative is not square integrable on any (beta, inf) with
/// beta < x0. The background is a Gaussian (zero amplitude disables it).
struct OneSidedDatum {
  double gamma = 1.3;
  double x0 = 0.0;
  double amplitude = 1.0;
  double bump_width = 4.0;
  double background_amplitude = 0.0;
  double background_center = 3.0;
  double background_width = 1.0;
};

/// rho_tau * inner.
struct MollifiedDatum {
  std::shared_ptr<const DatumSpec> inner;
  double tau = 0.1;
};

/// Explicit samples; must match the grid size.
struct SamplesDatum {
  std::vector<double> values;
};

struct DatumSpec {
  std::variant<GaussianDatum, SolitonDatum, OneSidedDatum, MollifiedDatum, SamplesDatum> kind;
};

DatumSpec mollified(DatumSpec inner, double tau);

/// Validates `spec` against `grid` and samples it. Mollification of analytic
/// data is evaluated by adaptive quadrature of the convolution at each grid
/// point (split at the datum's singular points); mollification of explicit
/// samples multiplies the spectrum by the transform of rho_tau.
RealField make_datum(const DatumSpec& spec, const GridPtr& grid);

/// Pointwise value of an analytic datum; `period` is used by SolitonDatum.
double datum_value(const DatumSpec& spec, double x, double period);

// --- solitary waves ---------------------------------------------------------

/// Line soliton 4c / (1 + c^2 (x - x_c - sigma c t)^2). sigma defaults to the
/// direction chosen by the residual oracle.
double soliton(double c, double x, double t, double x_c = 0.0);
double soliton(double c, double x, double t, double x_c, int sigma);

/// Exact L-periodic traveling wave with the same pole width a = 1/c:
///   2 kappa sinh(kappa a) / (cosh(kappa a) - cos(kappa (x - x_c - sigma s t))),
/// kappa = 2 pi / L, speed s = kappa coth(kappa a). Tends to the line soliton
/// as L -> inf.
double periodic_soliton(double c, double period, double x, double t, double x_c, int sigma);
double periodic_soliton_speed(double c, double period);

struct SolitonResidual {
  double chosen = 0.0;   ///< relative residual of the selected direction
  double rejected = 0.0; ///< relative residual of the opposite direction
  int sigma = 1;
};

/// Substitutes the traveling wave with direction sigma into the BO equation
/// on `grid` (spectral derivatives) and returns max|u_t - d_x^2 H u + u u_x|
/// divided by max|u_t|.
double soliton_residual(double c, const GridPtr& grid, int sigma);

/// Runs the residual oracle (c = 1, N = 2048, L = 100) and returns the
/// direction with vanishing residual. Computed once and cached.
SolitonResidual soliton_direction_oracle();
int soliton_direction();

}  // namespace boprop
