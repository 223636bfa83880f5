#include "boprop/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "boprop/errors.hpp"
#include "boprop/spectral.hpp"

namespace boprop {

void WindowSpec::validate() const {
  if (m < 0) throw ContractError("window: m must be >= 0");
  if (!(v >= 0.0) || !std::isfinite(v)) throw ContractError("window: v must be >= 0");
  if (!std::isfinite(x0)) throw ContractError("window: x0 must be finite");
  cutoff().validate();
}

Window::Window(WindowSpec spec) : spec_(spec) {
  spec_.validate();
  family_ = std::make_shared<const CutoffFamily>(spec_.cutoff());
}

CutoffSamples Window::at(const Grid& grid, double t) const { return family_->sample(grid, -spec_.x0 + spec_.v * t); }

namespace {

double weighted(std::span<const double> f, std::span<const double> g, std::span<const double> w, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i] * w[i];
  return s * h;
}

RealField pointwise(const RealField& u, const std::vector<double>& w) {
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = u[i] * w[i];
  return RealField(u.grid_ptr(), std::move(v));
}

double half_derivative_energy(const RealField& f) {
  const auto d = fractional_derivative(f, 0.5);
  return inner_product(d, d);
}

}  // namespace

double windowed_energy(const RealField& u, const Window& w, double t) {
  const auto s = w.at(u.grid(), t);
  const auto d = spatial_derivative(u, w.spec().m);
  return weighted(d.samples(), d.samples(), s.chi, u.grid().spacing());
}

double smoothing_density(const RealField& u, const Window& w, double t) {
  const auto s = w.at(u.grid(), t);
  const auto d = fractional_derivative(spatial_derivative(u, w.spec().m), 0.5);
  return weighted(d.samples(), d.samples(), s.chi_prime, u.grid().spacing());
}

double eta_smoothing_density(const RealField& u, const Window& w, double t) {
  const auto s = w.at(u.grid(), t);
  return half_derivative_energy(pointwise(spatial_derivative(u, w.spec().m), s.eta));
}

double half_windowed_energy(const RealField& u, const Window& w, double t) {
  const auto s = w.at(u.grid(), t);
  return half_derivative_energy(pointwise(spatial_derivative(u, w.spec().m), s.chi));
}

double gradient_flux_density(const RealField& u, const Window& w, double t) {
  const auto s = w.at(u.grid(), t);
  const auto d = spatial_derivative(u, w.spec().m + 1);
  std::vector<double> wt(s.chi.size());
  for (std::size_t i = 0; i < wt.size(); ++i) wt[i] = s.chi_prime[i] * s.chi[i];
  return weighted(d.samples(), d.samples(), wt, u.grid().spacing());
}

TailEnergy tail_energy(const RealField& u, int k, double t, double eps, double v, double x0) {
  if (k < 0) throw ContractError("tail_energy: order must be >= 0");
  const Grid& g = u.grid();
  TailEnergy r;
  r.cut = x0 + eps - v * t;
  r.seam_margin = g.x_right() - r.cut;
  const double guard = 4.0 * g.spacing();
  if (r.cut < g.x_left() + guard || r.cut > g.x_right() - guard)
    throw ContractError("tail_energy: cut point lies within 4h of the seam");
  const auto d = spatial_derivative(u, k);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.x(i) >= r.cut) s += d[i] * d[i];
  r.value = s * g.spacing();
  return r;
}

DiagnosticRecord diagnose(const RealField& u, const Window& w, double t) {
  const auto& ws = w.spec();
  const Grid& g = u.grid();
  const double h = g.spacing();
  const auto s = w.at(g, t);
  const auto dm = spatial_derivative(u, ws.m);
  const auto dm1 = spatial_derivative(u, ws.m + 1);

  DiagnosticRecord r;
  r.t = t;
  r.E_m = weighted(dm.samples(), dm.samples(), s.chi, h);
  const auto half = fractional_derivative(dm, 0.5);
  r.F_half = weighted(half.samples(), half.samples(), s.chi_prime, h);
  r.F_eta = half_derivative_energy(pointwise(dm, s.eta));
  r.E_half = half_derivative_energy(pointwise(dm, s.chi));
  std::vector<double> wt(s.chi.size());
  for (std::size_t i = 0; i < wt.size(); ++i) wt[i] = s.chi_prime[i] * s.chi[i];
  r.G_flux = weighted(dm1.samples(), dm1.samples(), wt, h);

  const double cut = ws.x0 + ws.eps - ws.v * t;
  const double guard = 4.0 * h;
  if (cut >= g.x_left() + guard && cut <= g.x_right() - guard) {
    double tail = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.x(i) >= cut) tail += dm[i] * dm[i];
    r.tail = tail * h;
  } else {
    r.tail = std::nan("");
  }
  return r;
}

void DiagnosticSeries::append(DiagnosticRecord r) {
  if (!records_.empty()) {
    const auto& p = records_.back();
    const double dt = std::abs(r.t - p.t);
    r.cum_F_half = p.cum_F_half + 0.5 * dt * (p.F_half + r.F_half);
    r.cum_F_eta = p.cum_F_eta + 0.5 * dt * (p.F_eta + r.F_eta);
    r.cum_G_flux = p.cum_G_flux + 0.5 * dt * (p.G_flux + r.G_flux);
  } else {
    r.cum_F_half = r.cum_F_eta = r.cum_G_flux = 0.0;
  }
  records_.push_back(r);
}

double DiagnosticSeries::sup_energy() const {
  double m = 0.0;
  for (const auto& r : records_) m = std::max(m, r.E_m);
  return m;
}

double DiagnosticSeries::sup_tail() const {
  double m = 0.0;
  for (const auto& r : records_)
    if (std::isfinite(r.tail)) m = std::max(m, r.tail);
  return m;
}

EnergyIdentityTerms energy_identity_residual(const RealField& prev, const RealField& cur, const RealField& next,
                                             double t, double dt, const Window& w, const PdeSpec& spec,
                                             bool dealias) {
  require_same_grid(prev.grid(), cur.grid(), "energy_identity_residual");
  require_same_grid(next.grid(), cur.grid(), "energy_identity_residual");
  if (!(dt != 0.0)) throw ContractError("energy_identity_residual: dt must be nonzero");
  const int m = w.spec().m;
  const double h = cur.grid().spacing();
  const double v = w.spec().v;

  EnergyIdentityTerms r;
  const double e_next = windowed_energy(next, w, t + dt);
  const double e_prev = windowed_energy(prev, w, t - dt);
  r.half_dEdt = 0.5 * (e_next - e_prev) / (2.0 * dt);

  const auto s = w.at(cur.grid(), t);
  const auto dm = spatial_derivative(cur, m);
  r.a1 = 0.5 * v * weighted(dm.samples(), dm.samples(), s.chi_prime, h);
  const auto lin = spatial_derivative(linear_term(cur, spec), m);
  r.a2 = weighted(lin.samples(), dm.samples(), s.chi, h);
  if (spec.nonlinear) {
    // nonlinear_term returns -s u^k u_x.
    const auto nl = spatial_derivative(nonlinear_term(cur, spec, dealias), m);
    r.a3 = -weighted(nl.samples(), dm.samples(), s.chi, h);
  }
  r.residual = r.half_dEdt - r.a1 - r.a2 + r.a3;
  return r;
}

double seam_energy_fraction(const RealField& u) {
  const Grid& g = u.grid();
  const double band = g.length() / 16.0;
  double total = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double e = u[i] * u[i];
    total += e;
    const double x = g.x(i);
    if (x < g.x_left() + band || x >= g.x_right() - band) edge += e;
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace boprop
