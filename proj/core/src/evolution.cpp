#include "boprop/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "boprop/spectral.hpp"
#include "fft.hpp"

namespace boprop {

Scheme parse_scheme(const std::string& s) {
  if (s == "ETDRK4") return Scheme::ETDRK4;
  if (s == "IF-RK4" || s == "IFRK4") return Scheme::IFRK4;
  throw ContractError("solver: unknown scheme '" + s + "' (expected ETDRK4 or IF-RK4)");
}

std::string to_string(Scheme s) { return s == Scheme::ETDRK4 ? "ETDRK4" : "IF-RK4"; }

void SolverConfig::validate() const {
  if (!grid) throw ContractError("solver: missing grid");
  if (!(dt != 0.0) || !std::isfinite(dt)) throw ContractError("solver: dt must be nonzero and finite");
  if (!std::isfinite(t_end)) throw ContractError("solver: t_end must be finite");
  if (t_end != 0.0 && (t_end > 0.0) != (dt > 0.0)) throw ContractError("solver: dt and t_end must have the same sign");
  if (snapshot_stride < 1) throw ContractError("solver: snapshot_stride must be >= 1");
  if (!(blowup_ceiling > 0.0)) throw ContractError("solver: blowup_ceiling must be positive");
}

std::size_t SolverConfig::step_count() const {
  if (t_end == 0.0) return 0;
  const double ratio = t_end / dt;
  const auto n = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
  return std::max<std::size_t>(n, 1);
}

double SolverConfig::effective_dt() const {
  const auto n = step_count();
  return n == 0 ? dt : t_end / static_cast<double>(n);
}

double stable_dt(const RealField& u0, const PdeSpec& spec, double cfl) {
  const double sup = lp_norm(u0, Norm::Linf);
  const double speed = std::max(std::pow(sup, spec.k), 1.0);
  return cfl * u0.grid().spacing() / speed;
}

namespace {

struct EtdCoefficients {
  Complex q, f1, f2, f3;
};

EtdCoefficients etd_coefficients(Complex z, double dt) {
  EtdCoefficients c;
  if (std::abs(z) >= 0.5) {
    const Complex ez = std::exp(z), z3 = z * z * z;
    c.q = dt * (std::exp(z / 2.0) - 1.0) / z;
    c.f1 = dt * (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
    c.f2 = dt * (2.0 + z + ez * (z - 2.0)) / z3;
    c.f3 = dt * (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
    return c;
  }
  // Contour mean on the unit circle around z avoids the cancellation near 0.
  constexpr int M = 32;
  Complex q = 0, f1 = 0, f2 = 0, f3 = 0;
  for (int m = 0; m < M; ++m) {
    const double theta = 2.0 * std::numbers::pi * (m + 0.5) / M;
    const Complex w = z + std::polar(1.0, theta);
    const Complex ew = std::exp(w), w3 = w * w * w;
    q += (std::exp(w / 2.0) - 1.0) / w;
    f1 += (-4.0 - w + ew * (4.0 - 3.0 * w + w * w)) / w3;
    f2 += (2.0 + w + ew * (w - 2.0)) / w3;
    f3 += (-4.0 - 3.0 * w - w * w + ew * (4.0 - w)) / w3;
  }
  c.q = dt * q / double(M);
  c.f1 = dt * f1 / double(M);
  c.f2 = dt * f2 / double(M);
  c.f3 = dt * f3 / double(M);
  return c;
}

}  // namespace

Stepper::Stepper(const PdeSpec& spec, GridPtr grid, double dt, Scheme scheme, bool dealias)
    : spec_(spec), grid_(std::move(grid)), dt_(dt), scheme_(scheme), dealias_(dealias) {
  spec_.validate();
  const std::size_t n = grid_->size();
  e_.assign(n, 0.0);
  e2_.assign(n, 0.0);
  q_.assign(n, 0.0);
  f1_.assign(n, 0.0);
  f2_.assign(n, 0.0);
  f3_.assign(n, 0.0);
  nl_factor_.assign(n, 0.0);
  keep_.assign(n, false);
  const double s = -static_cast<double>(spec_.focusing_sign) / static_cast<double>(spec_.k + 1);
  // Coefficients for j >= 0; negative modes are their conjugates, which keeps
  // real fields exactly Hermitian.
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double k = grid_->wavenumber(j);
    const Complex z = linear_symbol(k, spec_) * dt_;
    const auto c = etd_coefficients(z, dt_);
    const Complex e = std::exp(z), e2 = std::exp(z / 2.0);
    const bool keep_flux = !dealias_ || survives_dealias(grid_->mode(j), n);
    const Complex nl = keep_flux && spec_.nonlinear ? Complex(0.0, s * k) : Complex(0.0);
    const std::size_t mirror = (n - j) % n;
    e_[j] = e;
    e2_[j] = e2;
    q_[j] = c.q;
    f1_[j] = c.f1;
    f2_[j] = c.f2;
    f3_[j] = c.f3;
    nl_factor_[j] = nl;
    keep_[j] = true;
    if (mirror != j) {
      e_[mirror] = std::conj(e);
      e2_[mirror] = std::conj(e2);
      q_[mirror] = std::conj(c.q);
      f1_[mirror] = std::conj(c.f1);
      f2_[mirror] = std::conj(c.f2);
      f3_[mirror] = std::conj(c.f3);
      nl_factor_[mirror] = std::conj(nl);
      keep_[mirror] = true;
    }
  }
}

std::vector<Complex> Stepper::project(const RealField& u) const {
  require_same_grid(u.grid(), *grid_, "Stepper::project");
  auto F = forward(u);
  if (dealias_) F = dealias(std::move(F));
  std::vector<Complex> v(F.coeffs().begin(), F.coeffs().end());
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!keep_[j]) v[j] = 0.0;
  return v;
}

void Stepper::nonlinear(const std::vector<Complex>& v, std::vector<Complex>& out, double* sup) const {
  const std::size_t n = v.size();
  out.resize(n);
  if (!spec_.nonlinear) {
    std::fill(out.begin(), out.end(), Complex(0.0));
    if (sup) *sup = 0.0;
    return;
  }
  std::vector<Complex> phys(n);
  detail::dft_backward(v, phys);
  double m = 0.0;
  for (auto& p : phys) {
    const double u = p.real();
    m = std::max(m, std::abs(u));
    const double flux = std::pow(u, spec_.k + 1);
    if (!std::isfinite(flux)) throw BlowUpError("nonlinear flux overflowed", 0.0, {});
    p = flux;
  }
  if (sup) *sup = m;
  detail::dft_forward(phys, out);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] *= nl_factor_[j] * inv_n;
}

void Stepper::advance(std::vector<Complex>& v) const {
  const std::size_t n = v.size();
  std::vector<Complex> nv, na, nb, nc, a(n), b(n), c(n);
  if (scheme_ == Scheme::ETDRK4) {
    nonlinear(v, nv);
    for (std::size_t j = 0; j < n; ++j) a[j] = e2_[j] * v[j] + q_[j] * nv[j];
    nonlinear(a, na);
    for (std::size_t j = 0; j < n; ++j) b[j] = e2_[j] * v[j] + q_[j] * na[j];
    nonlinear(b, nb);
    for (std::size_t j = 0; j < n; ++j) c[j] = e2_[j] * a[j] + q_[j] * (2.0 * nb[j] - nv[j]);
    nonlinear(c, nc);
    for (std::size_t j = 0; j < n; ++j)
      v[j] = e_[j] * v[j] + f1_[j] * nv[j] + 2.0 * f2_[j] * (na[j] + nb[j]) + f3_[j] * nc[j];
  } else {
    const double h = dt_;
    nonlinear(v, nv);
    for (std::size_t j = 0; j < n; ++j) a[j] = e2_[j] * (v[j] + 0.5 * h * nv[j]);
    nonlinear(a, na);
    for (std::size_t j = 0; j < n; ++j) b[j] = e2_[j] * v[j] + 0.5 * h * na[j];
    nonlinear(b, nb);
    for (std::size_t j = 0; j < n; ++j) c[j] = e_[j] * v[j] + h * e2_[j] * nb[j];
    nonlinear(c, nc);
    for (std::size_t j = 0; j < n; ++j)
      v[j] = e_[j] * v[j] + h / 6.0 * (e_[j] * nv[j] + 2.0 * e2_[j] * (na[j] + nb[j]) + nc[j]);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!keep_[j]) v[j] = 0.0;
}

SolverState Stepper::step(const SolverState& s) const {
  auto v = project(s.u);
  advance(v);
  auto u = inverse(SpectralField(grid_, std::move(v)));
  return SolverState{s.t + dt_, std::move(u), s.baseline};
}

SolverState initial_state(const RealField& u0, const PdeSpec& spec) {
  return SolverState{0.0, u0, conserved_quantities(u0, spec)};
}

SolverState step(const SolverState& state, const SolverConfig& cfg, const PdeSpec& spec) {
  cfg.validate();
  require_same_grid(state.u.grid(), *cfg.grid, "step");
  const Stepper st(spec, cfg.grid, cfg.dt, cfg.scheme, cfg.dealias);
  return st.step(state);
}

double Trajectory::max_mass_drift() const {
  double m = 0.0;
  for (const auto& s : snapshots) m = std::max(m, std::abs(s.invariants.mass - baseline.mass));
  return m;
}

double Trajectory::max_l2_relative_drift() const {
  double m = 0.0;
  for (const auto& s : snapshots) m = std::max(m, std::abs(s.invariants.l2 - baseline.l2));
  return baseline.l2 > 0.0 ? m / baseline.l2 : m;
}

double Trajectory::max_hamiltonian_drift() const {
  double m = 0.0;
  for (const auto& s : snapshots) m = std::max(m, std::abs(s.invariants.hamiltonian - baseline.hamiltonian));
  return m;
}

namespace {

// Turns a non-finite field into a BlowUpError instead of a ContractError.
RealField checked_field(const GridPtr& grid, const std::vector<Complex>& v, double t,
                        const std::vector<double>& history) {
  std::vector<Complex> phys(v.size());
  detail::dft_backward(v, phys);
  std::vector<double> u(v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = phys[i].real();
    if (!std::isfinite(u[i])) throw BlowUpError("solution became non-finite", t, history);
  }
  return RealField(grid, std::move(u));
}

}  // namespace

Trajectory integrate(const RealField& u0, const SolverConfig& cfg, const PdeSpec& spec, const SnapshotHook& hook) {
  cfg.validate();
  spec.validate();
  require_same_grid(u0.grid(), *cfg.grid, "integrate");
  const int hsign = hamiltonian_potential_sign();

  Trajectory traj;
  traj.dt = cfg.effective_dt();
  auto record = [&](std::size_t step, double t, RealField u) {
    Snapshot s{step, t, std::move(u), {}};
    s.invariants = conserved_quantities(s.u, spec, hsign);
    traj.sup_history.push_back(lp_norm(s.u, Norm::Linf));
    if (hook) hook(s);
    if (!cfg.keep_fields) s.u = RealField::zeros(cfg.grid);
    traj.snapshots.push_back(std::move(s));
  };

  const std::size_t nsteps = cfg.step_count();
  if (nsteps == 0) {
    traj.baseline = conserved_quantities(u0, spec, hsign);
    record(0, 0.0, u0);
    return traj;
  }

  const Stepper st(spec, cfg.grid, traj.dt, cfg.scheme, cfg.dealias);
  auto v = st.project(u0);
  auto u = checked_field(cfg.grid, v, 0.0, traj.sup_history);
  traj.baseline = conserved_quantities(u, spec, hsign);
  record(0, 0.0, std::move(u));

  for (std::size_t n = 1; n <= nsteps; ++n) {
    const double t = static_cast<double>(n) * traj.dt;
    try {
      st.advance(v);
      const bool snap = n % static_cast<std::size_t>(cfg.snapshot_stride) == 0 || n == nsteps;
      if (snap) {
        auto field = checked_field(cfg.grid, v, t, traj.sup_history);
        const double sup = lp_norm(field, Norm::Linf);
        if (sup > cfg.blowup_ceiling) {
          auto h = traj.sup_history;
          h.push_back(sup);
          throw BlowUpError("sup norm exceeded the blow-up ceiling", t, h);
        }
        record(n, t, std::move(field));
      }
    } catch (const BlowUpError& e) {
      throw TrajectoryBlowUp(BlowUpError(e.what(), t, e.sup_history().empty() ? traj.sup_history : e.sup_history()),
                             traj);
    }
  }
  return traj;
}

Trajectory integrate(const DatumSpec& datum, const SolverConfig& cfg, const PdeSpec& spec, const SnapshotHook& hook) {
  cfg.validate();
  return integrate(make_datum(datum, cfg.grid), cfg, spec, hook);
}

HamiltonianSignOracle hamiltonian_sign_oracle() {
  static const HamiltonianSignOracle oracle = [] {
    HamiltonianSignOracle o;
    const auto grid = Grid::make(256, 40.0, -20.0);
    const PdeSpec bo{};
    const auto u0 = RealField::sample(grid, [](double x) { return 1.5 * std::exp(-x * x) + 0.5 * std::exp(-(x - 2) * (x - 2)); });
    const double T = 1.0;
    for (int level = 0; level < 2; ++level) {
      const double dt = level == 0 ? 0.05 : 0.025;
      const Stepper st(bo, grid, dt, Scheme::ETDRK4, true);
      auto v = st.project(u0);
      const auto start = inverse(SpectralField(grid, v));
      const auto steps = static_cast<int>(std::lround(T / dt));
      for (int n = 0; n < steps; ++n) st.advance(v);
      const auto end = inverse(SpectralField(grid, v));
      double* out = level == 0 ? o.drift_coarse : o.drift_fine;
      for (int c = 0; c < 2; ++c) {
        const int sign = c == 0 ? +1 : -1;
        out[c] = std::abs(hamiltonian_candidate(end, bo, sign) - hamiltonian_candidate(start, bo, sign));
      }
    }
    o.sign = o.drift_fine[0] <= o.drift_fine[1] ? +1 : -1;
    return o;
  }();
  return oracle;
}

int hamiltonian_potential_sign() { return hamiltonian_sign_oracle().sign; }

}  // namespace boprop
