#pragma once

#include <string>

#include "boprop/grid.hpp"

namespace boprop {

enum class Family { BO, gBO, gKdV };

/// One member of the dispersive family
///   u_t = L u - s u^k u_x,
/// with L = d_x^2 H (BO, gBO) or L = -d_x^3 (gKdV) and s = focusing_sign
/// (+1 focusing, -1 defocusing).
struct PdeSpec {
  Family family = Family::BO;
  int k = 1;
  int focusing_sign = 1;
  /// When false the nonlinear term is dropped (pure linear propagation).
  bool nonlinear = true;

  void validate() const;
  std::string name() const;
};

Family parse_family(const std::string& s);
std::string to_string(Family f);

/// Symbol of L: i k|k| for BO/gBO, i k^3 for gKdV. Purely imaginary.
Complex linear_symbol(double k, const PdeSpec& spec);

/// Nonlinear right-hand side -s u^k u_x, evaluated in conservative form
/// -s d_x(u^{k+1}/(k+1)); the flux is 2/3-dealiased when `dealias` is set.
/// Throws BlowUpError if u^{k+1} overflows.
RealField nonlinear_term(const RealField& u, const PdeSpec& spec, bool dealias);

/// Applies L to u spectrally.
RealField linear_term(const RealField& u, const PdeSpec& spec);

struct ConservedQuantities {
  double mass = 0.0;         ///< I1 = int u
  double l2 = 0.0;           ///< I2 = int u^2
  double hamiltonian = 0.0;  ///< I3
};

/// Hamiltonian candidate
///   1/2 int u K u  +  potential_sign * s * int u^{k+2} / ((k+1)(k+2)),
/// with K = D (BO, gBO) or -d_x^2 (gKdV). For BO this is
/// int (1/2 u H u_x +/- u^3/6).
double hamiltonian_candidate(const RealField& u, const PdeSpec& spec, int potential_sign);

/// I1, I2 and I3 with the potential sign selected by the drift oracle
/// (see hamiltonian_potential_sign in evolution.hpp) unless given.
ConservedQuantities conserved_quantities(const RealField& u, const PdeSpec& spec, int potential_sign);
ConservedQuantities conserved_quantities(const RealField& u, const PdeSpec& spec);

}  // namespace boprop
