#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boprop/grid.hpp"

namespace boprop {

// --- commutators -----------------------------------------------------------

/// ||d^l (H(psi d^m f) - psi H d^m f)||_p / (||d^{l+m} psi||_inf ||f||_p),
/// p in {2, 4}. A vanishing commutator gives 0 even when the psi factor
/// vanishes.
double commutator_hilbert(const RealField& psi, const RealField& f, int l, int m, double p);

/// [D^{1/2}; h] d_x f evaluated in physical space on a 2x zero-padded grid,
/// so the product h f' is not aliased.
RealField halfder_commutator_operator(const RealField& h, const RealField& f);
/// The same commutator from the double sum
///   c_q = sum_{j + j' = q} (|k_q|^{1/2} - |k_j'|^{1/2}) (i k_j') h_j f_j',
/// returned on the 2x padded grid. Coefficients below 1e-14 of the largest
/// are skipped.
SpectralField halfder_commutator_fourier(const RealField& h, const RealField& f);

struct HalfderResult {
  double ratio = 0.0;
  double numerator = 0.0;    ///< ||[D^{1/2}; h] f'||_2
  double h_prime_hat_l1 = 0.0;  ///< sum_j |i k_j h_j|
  double half_norm_f = 0.0;  ///< ||D^{1/2} f||_2
  double route_gap = 0.0;    ///< max coefficient gap between the two routes, relative
};

/// ||[D^{1/2}; h] f'||_2 / (||(h')^||_1 ||D^{1/2} f||_2), with the l1 norm of
/// the spectrum taken as the plain coefficient sum (forward transform scaled
/// by 1/n).
HalfderResult commutator_halfder(const RealField& h, const RealField& f);

// --- symbol inequality -------------------------------------------------------

/// ||xi|^{1/2} - |eta|^{1/2}| |eta| / (|eta|^{1/2} |xi - eta|)
double symbol_ratio(double xi, double eta);

struct SymbolScan {
  double sup = 0.0;
  double xi_at_sup = 0.0;
  double eta_at_sup = 0.0;
  std::size_t evaluated = 0;
};

/// Scans xi, eta in {i * step : |i * step| <= half_width}, skipping eta = 0
/// and xi = eta.
SymbolScan symbol_inequality_scan(double half_width = 100.0, double step = 0.05);

// --- fractional Leibniz ----------------------------------------------------

struct LeibnizExponents {
  double p = 2, p1 = 2, p2 = 2, p3 = 2, p4 = 2;
  /// p = 2, every other exponent in {2, 4, inf}, 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4.
  void validate() const;
  std::string label() const;
};

/// ||D^a(fg)||_p / (||f||_p1 ||D^a g||_p2 + ||D^a f||_p3 ||g||_p4), a in (0, 1).
double leibniz_ratio(const RealField& f, const RealField& g, double alpha, const LeibnizExponents& e);

// --- interpolation -----------------------------------------------------------

struct InterpolationRatios {
  double r1 = 0.0;  ///< ||f||_4 / ||D^{1/4} f||_2
  double r2 = 0.0;  ///< ||D^{1/2} f||_4 / (||f_x||_4^{1/2} ||f||_4^{1/2})
  double r3 = 0.0;  ///< ||D^{1/2} f||_4 / ||D^{3/4} f||_2
};

/// f must have zero mean.
InterpolationRatios interpolation_check(const RealField& f);

// --- test function families -------------------------------------------------

enum class FunctionKind { RandomTrig, GaussianBumps, MollifiedRamps };
std::string to_string(FunctionKind k);

/// Member `index` of a seeded family. Parameters are drawn from a generator
/// seeded by seed + index (and `stream`, for the second function of a pair)
/// and do not depend on the grid, so the same member can be sampled at any
/// resolution.
///  RandomTrig:     sum_{j=1}^{12} (a_j cos + b_j sin)(2 pi j (x - x_left) / L) / j, a, b ~ N(0, 1)
///  GaussianBumps:  1 to 3 bumps, centres in [-3, 3], widths in [0.3, 0.8], amplitudes N(0, 1)
///  MollifiedRamps: plateau chi(x - a) chi(c - x) with eps in [1, 1.5], b in [5 eps, 6 eps]
RealField family_member(FunctionKind kind, std::uint64_t seed, std::size_t index, int stream, const GridPtr& grid);

/// Share of sum |c_j|^2 carried by modes with |j| > n/4.
double spectral_tail_fraction(const RealField& f);

// --- suite ------------------------------------------------------------------

struct RatioReport {
  std::string id;
  std::vector<double> ratios;          ///< per sample, coarse grid
  std::vector<double> ratios_refined;  ///< per sample, refined grid
  double max_ratio = 0.0;
  double max_ratio_refined = 0.0;
  double refinement_change = 0.0;  ///< |max_refined - max| / max
  bool finite = true;
  bool stable = true;  ///< refinement_change <= 0.2
};

struct InequalitySuiteConfig {
  std::size_t n = 2048;
  double length = 32.0;
  double x_left = -16.0;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
};

struct InequalitySuiteResult {
  InequalitySuiteConfig config;
  std::vector<RatioReport> reports;
  SymbolScan symbol;
  double halfder_route_gap = 0.0;  ///< worst dual-route gap over all samples and grids
  bool all_passed() const;
};

/// Runs (CE) for (l, m) in {(0,1), (1,1), (1,3)} and p in {2, 4}, the D^{1/2}
/// commutator with both routes, fractional Leibniz at a = 1/2 with exponents
/// (2, inf, 2, 2, inf) and (2, 4, 4, 4, 4), the three interpolation ratios,
/// and the symbol scan. Sample i pairs a member of kind i mod 3 (stream 0)
/// with a member of kind (i + 1) mod 3 (stream 1); the coarse grid has n
/// points and the refined grid 2n.
InequalitySuiteResult run_inequality_suite(const InequalitySuiteConfig& cfg);

}  // namespace boprop
