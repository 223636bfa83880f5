#include "boprop/pde.hpp"

#include <cmath>

#include "boprop/errors.hpp"
#include "boprop/evolution.hpp"
#include "boprop/spectral.hpp"

namespace boprop {

void PdeSpec::validate() const {
  if (k < 1) throw ContractError("pde: nonlinearity power k must be >= 1");
  if (family == Family::BO && k != 1) throw ContractError("pde: BO requires k = 1 (use gBO for k > 1)");
  if (focusing_sign != 1 && focusing_sign != -1) throw ContractError("pde: focusing_sign must be +1 or -1");
}

std::string PdeSpec::name() const {
  std::string n = to_string(family);
  if (family != Family::BO) n += "(k=" + std::to_string(k) + ")";
  if (focusing_sign < 0) n += " defocusing";
  if (!nonlinear) n += " linear";
  return n;
}

Family parse_family(const std::string& s) {
  if (s == "BO") return Family::BO;
  if (s == "gBO") return Family::gBO;
  if (s == "gKdV") return Family::gKdV;
  throw ContractError("pde: unknown family '" + s + "' (expected BO, gBO or gKdV)");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::BO: return "BO";
    case Family::gBO: return "gBO";
    case Family::gKdV: return "gKdV";
  }
  return "?";
}

Complex linear_symbol(double k, const PdeSpec& spec) {
  if (spec.family == Family::gKdV) return Complex(0.0, k * k * k);
  return Complex(0.0, k * std::abs(k));
}

RealField nonlinear_term(const RealField& u, const PdeSpec& spec, bool dealias_flux) {
  const auto& g = u.grid();
  if (!spec.nonlinear) return RealField::zeros(u.grid_ptr());
  std::vector<double> flux(u.size());
  const double inv = 1.0 / static_cast<double>(spec.k + 1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    flux[i] = std::pow(u[i], spec.k + 1) * inv;
    if (!std::isfinite(flux[i])) throw BlowUpError("nonlinear_term: u^(k+1) overflowed", 0.0, {});
  }
  auto F = forward(RealField(u.grid_ptr(), std::move(flux)));
  if (dealias_flux) F = dealias(std::move(F));
  const double s = -static_cast<double>(spec.focusing_sign);
  for (std::size_t j = 0; j < F.size(); ++j) F[j] *= Complex(0.0, s * g.wavenumber(j));
  F[g.nyquist_slot()] = 0.0;
  return inverse(F);
}

RealField linear_term(const RealField& u, const PdeSpec& spec) {
  return apply_multiplier(u, [&spec](double k) { return linear_symbol(k, spec); }, true);
}

double hamiltonian_candidate(const RealField& u, const PdeSpec& spec, int potential_sign) {
  const auto F = forward(u);
  const auto& g = u.grid();
  double quad = 0.0;
  for (std::size_t j = 0; j < F.size(); ++j) {
    if (j == g.nyquist_slot()) continue;
    const double k = g.wavenumber(j);
    const double K = spec.family == Family::gKdV ? k * k : std::abs(k);
    quad += K * std::norm(F[j]);
  }
  quad *= 0.5 * g.length();
  double pot = 0.0;
  for (double x : u.samples()) pot += std::pow(x, spec.k + 2);
  pot *= g.spacing() / static_cast<double>((spec.k + 1) * (spec.k + 2));
  return quad + static_cast<double>(potential_sign * spec.focusing_sign) * pot;
}

ConservedQuantities conserved_quantities(const RealField& u, const PdeSpec& spec, int potential_sign) {
  ConservedQuantities q;
  q.mass = integral(u);
  q.l2 = inner_product(u, u);
  q.hamiltonian = hamiltonian_candidate(u, spec, potential_sign);
  return q;
}

ConservedQuantities conserved_quantities(const RealField& u, const PdeSpec& spec) {
  return conserved_quantities(u, spec, hamiltonian_potential_sign());
}

}  // namespace boprop
