#include "boprop/datum.hpp"

#include <cmath>
#include <numbers>

#include "boprop/cutoff.hpp"
#include "boprop/errors.hpp"
#include "boprop/quadrature.hpp"
#include "boprop/spectral.hpp"

namespace boprop {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double one_sided_bump(const OneSidedDatum& d, double x) {
  const double r = (x - d.x0) / d.bump_width;
  if (r * r >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

double one_sided_value(const OneSidedDatum& d, double x) {
  double v = 0.0;
  if (x < d.x0) v = d.amplitude * std::pow(d.x0 - x, d.gamma) * one_sided_bump(d, x);
  if (d.background_amplitude != 0.0) {
    const double z = (x - d.background_center) / d.background_width;
    v += d.background_amplitude * std::exp(-z * z);
  }
  return v;
}

// Abscissae where the datum fails to be smooth.
std::vector<double> singular_points(const DatumSpec& spec) {
  if (const auto* o = std::get_if<OneSidedDatum>(&spec.kind)) return {o->x0};
  return {};
}

void validate(const DatumSpec& spec, const Grid& grid) {
  std::visit(Overloaded{
                 [](const GaussianDatum& g) {
                   if (!(g.width > 0.0)) throw ContractError("datum.gaussian: width must be positive");
                 },
                 [](const SolitonDatum& s) {
                   if (!(s.c > 0.0)) throw ContractError("datum.soliton: speed c must be positive");
                 },
                 [&grid](const OneSidedDatum& o) {
                   if (!(o.gamma > 1.0 && o.gamma < 2.0))
                     throw ContractError("datum.one_sided_singular: gamma must lie in (1, 2)");
                   if (!(o.bump_width > 0.0))
                     throw ContractError("datum.one_sided_singular: bump_width must be positive");
                   if (!(o.background_width > 0.0))
                     throw ContractError("datum.one_sided_singular: background_width must be positive");
                   const double margin = grid.length() / 8.0;
                   if (o.x0 - o.bump_width < grid.x_left() + margin || o.x0 > grid.x_right() - margin)
                     throw ContractError(
                         "datum.one_sided_singular: singular point and bump must stay L/8 away from the seam");
                 },
                 [&grid](const MollifiedDatum& m) {
                   if (!m.inner) throw ContractError("datum.mollified: missing inner datum");
                   if (!(m.tau > 0.0)) throw ContractError("datum.mollified: tau must be positive");
                   validate(*m.inner, grid);
                 },
                 [&grid](const SamplesDatum& s) {
                   if (s.values.size() != grid.size())
                     throw ContractError("datum.samples: sample count does not match grid size");
                 },
             },
             spec.kind);
}

// Fourier transform of rho at frequency xi (rho is even).
double rho_hat(double xi) {
  if (xi == 0.0) return 1.0;
  return integrate_adaptive([xi](double s) { return mollifier_rho(s) * std::cos(xi * s); }, -1.0, 1.0, 1e-12);
}

double mollified_value(const MollifiedDatum& m, double x, double period) {
  const auto& inner = *m.inner;
  auto integrand = [&](double s) { return mollifier_rho(s) * datum_value(inner, x - m.tau * s, period); };
  std::vector<double> cuts{-1.0};
  for (double p : singular_points(inner)) {
    const double s = (x - p) / m.tau;
    if (s > -1.0 && s < 1.0) cuts.push_back(s);
  }
  cuts.push_back(1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) acc += integrate_endpoint_singular(integrand, cuts[i], cuts[i + 1], 1e-12, x);
  return acc;
}

}  // namespace

DatumSpec mollified(DatumSpec inner, double tau) {
  return DatumSpec{MollifiedDatum{std::make_shared<const DatumSpec>(std::move(inner)), tau}};
}

double datum_value(const DatumSpec& spec, double x, double period) {
  return std::visit(Overloaded{
                        [x](const GaussianDatum& g) {
                          const double z = (x - g.center) / g.width;
                          return g.amplitude * std::exp(-z * z);
                        },
                        [x, period](const SolitonDatum& s) {
                          return periodic_soliton(s.c, period, x, 0.0, s.x_c, soliton_direction());
                        },
                        [x](const OneSidedDatum& o) { return one_sided_value(o, x); },
                        [x, period](const MollifiedDatum& m) { return mollified_value(m, x, period); },
                        [](const SamplesDatum&) -> double {
                          throw ContractError("datum_value: explicit samples have no pointwise evaluator");
                        },
                    },
                    spec.kind);
}

RealField make_datum(const DatumSpec& spec, const GridPtr& grid) {
  validate(spec, *grid);
  if (const auto* s = std::get_if<SamplesDatum>(&spec.kind)) return RealField(grid, s->values);
  if (const auto* m = std::get_if<MollifiedDatum>(&spec.kind);
      m && std::holds_alternative<SamplesDatum>(m->inner->kind)) {
    auto F = forward(make_datum(*m->inner, grid));
    for (std::size_t j = 0; j < F.size(); ++j) F[j] *= rho_hat(grid->wavenumber(j) * m->tau);
    return inverse(F);
  }
  const double period = grid->length();
  return RealField::sample(grid, [&](double x) { return datum_value(spec, x, period); });
}

// --- solitary waves ---------------------------------------------------------

double soliton(double c, double x, double t, double x_c, int sigma) {
  if (!(c > 0.0)) throw ContractError("soliton: c must be positive");
  const double z = c * (x - x_c - sigma * c * t);
  return 4.0 * c / (1.0 + z * z);
}

double soliton(double c, double x, double t, double x_c) { return soliton(c, x, t, x_c, soliton_direction()); }

double periodic_soliton_speed(double c, double period) {
  const double kappa = 2.0 * std::numbers::pi / period;
  return kappa / std::tanh(kappa / c);
}

double periodic_soliton(double c, double period, double x, double t, double x_c, int sigma) {
  if (!(c > 0.0)) throw ContractError("soliton: c must be positive");
  const double kappa = 2.0 * std::numbers::pi / period;
  const double a = 1.0 / c;
  const double s = periodic_soliton_speed(c, period);
  // cosh A - cos B written as 2 sinh^2(A/2) + 2 sin^2(B/2), free of cancellation for long periods
  const double sa = std::sinh(0.5 * kappa * a);
  const double sb = std::sin(0.5 * kappa * (x - x_c - sigma * s * t));
  return kappa * std::sinh(kappa * a) / (sa * sa + sb * sb);
}

double soliton_residual(double c, const GridPtr& grid, int sigma) {
  const double L = grid->length();
  const double kappa = 2.0 * std::numbers::pi / L;
  const double a = 1.0 / c;
  const double s = periodic_soliton_speed(c, L);
  const double sh = std::sinh(kappa * a), ch = std::cosh(kappa * a);
  const auto u = RealField::sample(grid, [&](double x) { return periodic_soliton(c, L, x, 0.0, 0.0, sigma); });
  // u_t = -sigma s phi'(x)
  const auto ut = RealField::sample(grid, [&](double x) {
    const double d = ch - std::cos(kappa * x);
    const double dphi = -2.0 * kappa * kappa * sh * std::sin(kappa * x) / (d * d);
    return -sigma * s * dphi;
  });
  const auto disp = spatial_derivative(hilbert_transform(u), 2);
  const auto ux = spatial_derivative(u, 1);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    worst = std::max(worst, std::abs(ut[i] - disp[i] + u[i] * ux[i]));
    scale = std::max(scale, std::abs(ut[i]));
  }
  return worst / scale;
}

SolitonResidual soliton_direction_oracle() {
  static const SolitonResidual r = [] {
    const auto grid = Grid::make(2048, 100.0, -50.0);
    const double plus = soliton_residual(1.0, grid, +1);
    const double minus = soliton_residual(1.0, grid, -1);
    SolitonResidual out;
    out.sigma = plus <= minus ? +1 : -1;
    out.chosen = std::min(plus, minus);
    out.rejected = std::max(plus, minus);
    return out;
  }();
  return r;
}

int soliton_direction() { return soliton_direction_oracle().sigma; }

}  // namespace boprop
