#include "boprop/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "boprop/errors.hpp"
#include "boprop/quadrature.hpp"

namespace boprop {
namespace {

double bump_unnormalized(double x) {
  const double d = x * x - 1.0;
  return d < 0.0 ? std::exp(1.0 / d) : 0.0;
}

constexpr double kMassTol = 1e-13;

}  // namespace

double mollifier_normalization() {
  static const double c = 1.0 / integrate_adaptive(bump_unnormalized, -1.0, 1.0, 1e-14);
  return c;
}

double mollifier_rho(double x) { return mollifier_normalization() * bump_unnormalized(x); }

double mollifier_scaled(double x, double tau) { return mollifier_rho(x / tau) / tau; }

double mollifier_mass(double a, double b) {
  a = std::max(a, -1.0);
  b = std::min(b, 1.0);
  if (a >= b) return 0.0;
  if (a == -1.0 && b == 1.0) return 1.0;
  return mollifier_normalization() * integrate_adaptive(bump_unnormalized, a, b, kMassTol, a);
}

void CutoffParams::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ContractError("cutoff: eps must be positive");
  // Relative slack so that b = 5 eps survives the usual decimal round trip.
  if (!(b >= 5.0 * eps * (1.0 - 1e-12)) || !std::isfinite(b))
  {
    char msg[128];
    std::snprintf(msg, sizeof msg, "cutoff: b must satisfy b >= 5 eps (eps = %g, b = %g)", eps, b);
    throw ContractError(msg);
  }
  if (!std::isfinite(shift) || !std::isfinite(speed)) throw ContractError("cutoff: shift and speed must be finite");
}

double ramp_nu(double x, const CutoffParams& p) {
  if (x <= 2.0 * p.eps) return 0.0;
  if (x >= p.b - p.eps) return 1.0;
  return p.ramp_slope() * (x - 2.0 * p.eps);
}

CutoffFamily::CutoffFamily(CutoffParams p) : p_(p) { p_.validate(); }

// chi(x) = int rho(s) nu(x - eps s) ds. nu(x - eps s) is 1 for s <= s_top,
// linear for s_top < s < s_bot and 0 beyond s_bot.
double CutoffFamily::chi(double x) const {
  const double eps = p_.eps;
  const double s_top = (x - (p_.b - eps)) / eps;
  const double s_bot = (x - 2.0 * eps) / eps;
  double value = mollifier_mass(-1.0, s_top);
  const double lo = std::max(s_top, -1.0), hi = std::min(s_bot, 1.0);
  if (lo < hi) {
    const double slope = p_.ramp_slope();
    auto integrand = [&](double s) { return bump_unnormalized(s) * slope * (x - 2.0 * eps - eps * s); };
    value += mollifier_normalization() * integrate_adaptive(integrand, lo, hi, 1e-12, x);
  }
  return value;
}

double CutoffFamily::chi_prime(double x) const {
  const double eps = p_.eps;
  const double s_top = (x - (p_.b - eps)) / eps;
  const double s_bot = (x - 2.0 * eps) / eps;
  return p_.ramp_slope() * mollifier_mass(s_top, s_bot);
}

double CutoffFamily::chi_second(double x) const {
  const double eps = p_.eps;
  return p_.ramp_slope() * (mollifier_scaled(x - 2.0 * eps, eps) - mollifier_scaled(x - (p_.b - eps), eps));
}

double CutoffFamily::eta(double x) const { return std::sqrt(std::max(chi_prime(x), 0.0)); }

double CutoffFamily::eta_prime(double x) const {
  const double e = eta(x);
  return e > 0.0 ? chi_second(x) / (2.0 * e) : 0.0;
}

CutoffSamples CutoffFamily::sample(const Grid& grid, double offset) const {
  char key[128];
  std::snprintf(key, sizeof key, "%zu/%a/%a/%a", grid.size(), grid.length(), grid.x_left(), offset);
  {
    std::lock_guard lock(cache_mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  }
  const std::size_t n = grid.size();
  CutoffSamples s;
  s.chi.resize(n);
  s.chi_prime.resize(n);
  s.chi_second.resize(n);
  s.eta.resize(n);
  s.eta_prime.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = grid.x(i) + offset;
    s.chi[i] = chi(y);
    s.chi_prime[i] = chi_prime(y);
    s.chi_second[i] = chi_second(y);
    s.eta[i] = std::sqrt(std::max(s.chi_prime[i], 0.0));
    s.eta_prime[i] = s.eta[i] > 0.0 ? s.chi_second[i] / (2.0 * s.eta[i]) : 0.0;
  }
  auto shared = std::make_shared<const CutoffSamples>(std::move(s));
  std::lock_guard lock(cache_mu_);
  if (cache_.size() >= 64) cache_.clear();
  cache_.emplace(key, shared);
  return *shared;
}

bool CutoffReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

GridPtr default_probe(const CutoffParams& p) {
  p.validate();
  const double left = -p.eps, right = p.b + 2.0 * p.eps;
  const double target = p.eps / 20.0;
  std::size_t n = 8;
  while ((right - left) / static_cast<double>(n) > target) n *= 2;
  return Grid::make(n, right - left, left);
}

namespace {

// Largest |forward difference of order j| / h^j for j = 1..4 on [a, b].
std::vector<double> max_divided_differences(const CutoffFamily& fam, double a, double b, double h) {
  const auto count = static_cast<std::size_t>(std::ceil((b - a) / h)) + 5;
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = fam.eta(a + static_cast<double>(i) * h);
  std::vector<double> out;
  std::vector<double> diff = v;
  double hp = 1.0;
  for (int order = 1; order <= 4; ++order) {
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
    hp *= h;
    double m = 0.0;
    for (double d : diff) m = std::max(m, std::abs(d));
    out.push_back(m / hp);
  }
  return out;
}

PropertyCheck make_check(std::string id, std::string desc, bool ok, double observed, double bound) {
  return PropertyCheck{std::move(id), std::move(desc), ok, observed, bound};
}

}  // namespace

CutoffReport verify_family(const CutoffParams& p, const Grid& probe) {
  p.validate();
  const double eps = p.eps, b = p.b;
  if (probe.spacing() > eps / 20.0 * (1.0 + 1e-12))
    throw ContractError("verify_family: probe grid does not resolve eps (need h <= eps/20)");

  CutoffReport rep;
  rep.params = p;
  rep.probe_spacing = probe.spacing();
  const double tol = rep.tolerance;
  const double id_tol = rep.identity_tolerance;
  const double slope = p.ramp_slope();

  const CutoffFamily fam(CutoffParams{eps, b, 0.0, 0.0});
  const CutoffFamily inner(CutoffParams{eps / 5.0, eps, 0.0, 0.0});
  const CutoffFamily wide(CutoffParams{eps / 3.0, b + 2.0 * eps / 3.0, 0.0, 0.0});

  const std::size_t n = probe.size();
  std::vector<double> x(n), chi(n), dchi(n), eta(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = probe.x(i);
    chi[i] = fam.chi(x[i]);
    dchi[i] = fam.chi_prime(x[i]);
    eta[i] = fam.eta(x[i]);
  }

  double supp_chi = 0.0, supp_dchi = 0.0, low_slope = std::numeric_limits<double>::infinity();
  double flat_dev = 0.0, above_one = 0.0, max_dchi = 0.0, range_violation = 0.0, mono = 0.0;
  double eta_identity = 0.0;
  rep.chi_at_3eps = fam.chi(3.0 * eps);
  double below_3eps_value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < eps) supp_chi = std::max(supp_chi, std::abs(chi[i]));
    if (x[i] < eps || x[i] > b) supp_dchi = std::max(supp_dchi, std::abs(dchi[i]));
    if (x[i] > 3.0 * eps && x[i] < b - 2.0 * eps) {
      low_slope = std::min(low_slope, dchi[i]);
      flat_dev = std::max(flat_dev, std::abs(dchi[i] - slope));
    }
    if (x[i] > 3.0 * eps) below_3eps_value = std::max(below_3eps_value, rep.chi_at_3eps - chi[i]);
    if (x[i] >= b) above_one = std::max(above_one, std::abs(1.0 - chi[i]));
    max_dchi = std::max(max_dchi, dchi[i]);
    range_violation = std::max({range_violation, -chi[i], chi[i] - 1.0, -dchi[i]});
    if (i + 1 < n) mono = std::max(mono, chi[i] - fam.chi(x[i] + probe.spacing()));
    eta_identity = std::max(eta_identity, std::abs(eta[i] * eta[i] - dchi[i]));
  }
  const double lower_26 = 0.5 * eps / (b - 3.0 * eps);

  auto& c = rep.checks;
  c.push_back(make_check("2.1", "chi = 1 for x >= b", above_one <= tol, above_one, tol));
  c.push_back(make_check("2.4a", "supp chi within [eps, inf)", supp_chi <= tol, supp_chi, tol));
  c.push_back(make_check("2.4b", "supp chi' within [eps, b]", supp_dchi <= tol, supp_dchi, tol));
  c.push_back(make_check("2.5", "chi' >= 1/(b-3eps) on (3eps, b-2eps)", low_slope >= slope - tol, low_slope, slope));
  c.push_back(make_check("2.5-flat", "chi' == 1/(b-3eps) on (3eps, b-2eps)", flat_dev <= tol, flat_dev, tol));
  c.push_back(make_check("2.6", "chi(x) >= chi(3eps) >= eps/(2(b-3eps)) on (3eps, inf)",
                         rep.chi_at_3eps >= lower_26 - tol && below_3eps_value <= tol, rep.chi_at_3eps, lower_26));
  c.push_back(make_check("2.7", "chi' <= 1/(b-3eps) everywhere", max_dchi <= slope + tol, max_dchi, slope));
  c.push_back(make_check("range", "0 <= chi <= 1 and chi' >= 0", range_violation <= tol, range_violation, tol));
  c.push_back(make_check("monotone", "chi nondecreasing on the probe", mono <= 1e-12, mono, 1e-12));
  c.push_back(make_check("2.8", "eta^2 == chi'", eta_identity <= id_tol, eta_identity, id_tol));

  // Nested-family relations.
  double cl1 = 0.0, c2 = 0.0, c3 = 0.0;
  bool cl2_finite = true, cl3_finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] >= eps) cl1 = std::max(cl1, std::abs(1.0 - inner.chi(x[i])));
    if (dchi[i] > 0.0) {
      const double d2 = wide.chi_prime(x[i]) * wide.chi(x[i]);
      if (d2 > 0.0) c2 = std::max(c2, dchi[i] / d2);
      else cl2_finite = false;
      const double d3 = inner.chi(x[i]);
      if (d3 > 0.0) c3 = std::max(c3, dchi[i] / d3);
      else cl3_finite = false;
    }
  }
  rep.cl_constant_2 = c2;
  rep.cl_constant_3 = c3;
  c.push_back(make_check("CL1", "chi_{eps/5,eps} = 1 on supp chi_{eps,b}", cl1 <= id_tol, cl1, id_tol));
  c.push_back(make_check("CL2", "chi' <= c chi'_{eps/3,b+2eps/3} chi_{eps/3,b+2eps/3}",
                         cl2_finite && std::isfinite(c2) && c2 > 0.0, c2, std::numeric_limits<double>::infinity()));
  c.push_back(make_check("CL3", "chi' <= c chi_{eps/5,eps}", cl3_finite && std::isfinite(c3) && c3 > 0.0, c3,
                         std::numeric_limits<double>::infinity()));

  // Smoothness ladder for eta: divided differences must stay bounded as the
  // step halves.
  const double h0 = std::min(probe.spacing(), eps / 20.0);
  bool ladder_ok = true;
  double worst_ratio = 0.0;
  for (int level = 0; level < 3; ++level) {
    const double h = h0 / std::pow(2.0, level);
    rep.eta_ladder.push_back({h, max_divided_differences(fam, 0.5 * eps, b + 0.5 * eps, h)});
  }
  for (std::size_t l = 1; l < rep.eta_ladder.size(); ++l) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double prev = rep.eta_ladder[l - 1].max_divided_difference[j];
      const double cur = rep.eta_ladder[l].max_divided_difference[j];
      const double ratio = prev > 0.0 ? cur / prev : std::numeric_limits<double>::infinity();
      worst_ratio = std::max(worst_ratio, ratio);
      if (!(ratio <= 2.0)) ladder_ok = false;
    }
  }
  c.push_back(make_check("eta-smooth", "max |D^j eta| (j<=4) ratio between halved steps <= 2", ladder_ok,
                         worst_ratio, 2.0));
  return rep;
}

}  // namespace boprop
