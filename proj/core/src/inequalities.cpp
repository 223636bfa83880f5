#include "boprop/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "boprop/cutoff.hpp"
#include "boprop/errors.hpp"
#include "boprop/spectral.hpp"

namespace boprop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm_p(const RealField& f, double p) {
  if (std::isinf(p)) return sup_norm_oversampled(f, 4);
  return lp_norm(f, p);
}

}  // namespace

double commutator_hilbert(const RealField& psi, const RealField& f, int l, int m, double p) {
  require_same_grid(psi.grid(), f.grid(), "commutator_hilbert");
  if (l < 0 || m < 0 || l + m < 1) throw ContractError("commutator_hilbert: need l, m >= 0 and l + m >= 1");
  if (p != 2.0 && p != 4.0) throw ContractError("commutator_hilbert: p must be 2 or 4");
  const double fp = lp_norm(f, p);
  if (!(fp > 0.0)) throw ContractError("commutator_hilbert: ||f||_p is zero");
  const double dpsi = sup_norm_oversampled(spatial_derivative(psi, l + m), 4);
  if (dpsi <= 1e-12 * std::max(1.0, lp_norm(psi, Norm::Linf))) return 0.0;
  const auto dmf = spatial_derivative(f, m);
  const auto g = spatial_derivative(hilbert_transform(psi.times(dmf)) - psi.times(hilbert_transform(dmf)), l);
  return lp_norm(g, p) / (dpsi * fp);
}

RealField halfder_commutator_operator(const RealField& h, const RealField& f) {
  require_same_grid(h.grid(), f.grid(), "halfder_commutator_operator");
  const auto h2 = oversample(h, 2);
  const auto fp = spatial_derivative(oversample(f, 2), 1);
  return fractional_derivative(h2.times(fp), 0.5) - h2.times(fractional_derivative(fp, 0.5));
}

SpectralField halfder_commutator_fourier(const RealField& h, const RealField& f) {
  require_same_grid(h.grid(), f.grid(), "halfder_commutator_fourier");
  const auto H = forward(oversample(h, 2));
  const auto F = forward(oversample(f, 2));
  const Grid& g = H.grid();
  const std::size_t n = g.size();

  auto support = [n](const SpectralField& S) {
    double peak = 0.0;
    for (const auto& c : S.coeffs()) peak = std::max(peak, std::abs(c));
    std::vector<std::size_t> slots;
    for (std::size_t s = 0; s < n; ++s)
      if (std::abs(S[s]) > 1e-14 * peak) slots.push_back(s);
    return slots;
  };
  const auto hs = support(H);
  const auto fs = support(F);

  std::vector<Complex> out(n, 0.0);
  const auto nn = static_cast<std::int64_t>(n);
  for (const auto jf : fs) {
    const double kf = g.wavenumber(jf);
    const Complex df = Complex(0.0, kf) * F[jf];
    const double rf = std::sqrt(std::abs(kf));
    const std::int64_t mf = g.mode(jf);
    for (const auto jh : hs) {
      std::int64_t q = g.mode(jh) + mf;
      q = ((q + nn / 2) % nn + nn) % nn - nn / 2;
      const std::size_t slot = g.slot(q);
      const double kq = g.wavenumber(slot);
      out[slot] += (std::sqrt(std::abs(kq)) - rf) * df * H[jh];
    }
  }
  return SpectralField(H.grid_ptr(), std::move(out));
}

HalfderResult commutator_halfder(const RealField& h, const RealField& f) {
  HalfderResult r;
  const auto Hh = forward(h);
  for (std::size_t j = 0; j < Hh.size(); ++j) {
    if (j == h.grid().nyquist_slot()) continue;
    r.h_prime_hat_l1 += std::abs(h.grid().wavenumber(j) * Hh[j]);
  }
  r.half_norm_f = lp_norm(fractional_derivative(f, 0.5), Norm::L2);
  if (!(r.h_prime_hat_l1 > 0.0) || !(r.half_norm_f > 0.0))
    throw ContractError("commutator_halfder: denominator is zero");

  const auto fourier = halfder_commutator_fourier(h, f);
  const auto op = forward(halfder_commutator_operator(h, f));
  double peak = 0.0, gap = 0.0, energy = 0.0;
  for (std::size_t s = 0; s < fourier.size(); ++s) {
    peak = std::max(peak, std::abs(fourier[s]));
    gap = std::max(gap, std::abs(fourier[s] - op[s]));
    energy += std::norm(fourier[s]);
  }
  r.route_gap = peak > 0.0 ? gap / peak : gap;
  r.numerator = std::sqrt(fourier.grid().length() * energy);
  r.ratio = r.numerator / (r.h_prime_hat_l1 * r.half_norm_f);
  return r;
}

double symbol_ratio(double xi, double eta) {
  const double ae = std::abs(eta);
  return std::abs(std::sqrt(std::abs(xi)) - std::sqrt(ae)) * ae / (std::sqrt(ae) * std::abs(xi - eta));
}

SymbolScan symbol_inequality_scan(double half_width, double step) {
  if (!(step > 0.0) || !(half_width > 0.0)) throw ContractError("symbol_inequality_scan: bad scan extent");
  const auto half = static_cast<std::int64_t>(std::floor(half_width / step + 1e-9));
  SymbolScan s;
  for (std::int64_t i = -half; i <= half; ++i) {
    const double xi = static_cast<double>(i) * step;
    for (std::int64_t j = -half; j <= half; ++j) {
      if (j == 0 || j == i) continue;
      const double eta = static_cast<double>(j) * step;
      const double r = symbol_ratio(xi, eta);
      ++s.evaluated;
      if (r > s.sup) {
        s.sup = r;
        s.xi_at_sup = xi;
        s.eta_at_sup = eta;
      }
    }
  }
  return s;
}

void LeibnizExponents::validate() const {
  if (p != 2.0) throw ContractError("leibniz: only p = 2 is supported");
  for (double q : {p1, p2, p3, p4})
    if (q != 2.0 && q != 4.0 && !std::isinf(q)) throw ContractError("leibniz: exponents must be 2, 4 or inf");
  auto inv = [](double q) { return std::isinf(q) ? 0.0 : 1.0 / q; };
  if (std::abs(inv(p) - inv(p1) - inv(p2)) > 1e-12 || std::abs(inv(p) - inv(p3) - inv(p4)) > 1e-12)
    throw ContractError("leibniz: exponents " + label() + " are not Hoelder-consistent");
}

std::string LeibnizExponents::label() const {
  auto s = [](double q) { return std::isinf(q) ? std::string("inf") : std::to_string(static_cast<int>(q)); };
  return "(" + s(p) + "," + s(p1) + "," + s(p2) + "," + s(p3) + "," + s(p4) + ")";
}

double leibniz_ratio(const RealField& f, const RealField& g, double alpha, const LeibnizExponents& e) {
  require_same_grid(f.grid(), g.grid(), "leibniz_ratio");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractError("leibniz: alpha must lie in (0, 1)");
  e.validate();
  const double lhs = norm_p(fractional_derivative(f.times(g), alpha), e.p);
  const double rhs = norm_p(f, e.p1) * norm_p(fractional_derivative(g, alpha), e.p2) +
                     norm_p(fractional_derivative(f, alpha), e.p3) * norm_p(g, e.p4);
  if (!(rhs > 0.0)) {
    if (lhs == 0.0) return 0.0;
    throw ContractError("leibniz: right-hand side is zero");
  }
  return lhs / rhs;
}

InterpolationRatios interpolation_check(const RealField& f) {
  const double scale = lp_norm(f, Norm::L1) / f.grid().length();
  if (std::abs(mean(f)) > 1e-10 * std::max(scale, 1e-300)) throw ContractError("interpolation_check: f must have zero mean");
  const double f4 = lp_norm(f, Norm::L4);
  const double d14 = lp_norm(fractional_derivative(f, 0.25), Norm::L2);
  const double d12_4 = lp_norm(fractional_derivative(f, 0.5), Norm::L4);
  const double fx4 = lp_norm(spatial_derivative(f, 1), Norm::L4);
  const double d34 = lp_norm(fractional_derivative(f, 0.75), Norm::L2);
  if (!(d14 > 0.0) || !(fx4 > 0.0) || !(f4 > 0.0) || !(d34 > 0.0))
    throw ContractError("interpolation_check: zero denominator");
  return {f4 / d14, d12_4 / std::sqrt(fx4 * f4), d12_4 / d34};
}

std::string to_string(FunctionKind k) {
  switch (k) {
    case FunctionKind::RandomTrig: return "random_trig";
    case FunctionKind::GaussianBumps: return "gaussian_bumps";
    case FunctionKind::MollifiedRamps: return "mollified_ramps";
  }
  return "?";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RealField family_member(FunctionKind kind, std::uint64_t seed, std::size_t index, int stream, const GridPtr& grid) {
  std::mt19937_64 rng(splitmix64(splitmix64(seed + index) ^ static_cast<std::uint64_t>(stream)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double L = grid->length(), x_left = grid->x_left();
  switch (kind) {
    case FunctionKind::RandomTrig: {
      constexpr int J = 12;
      std::vector<double> a(J + 1), b(J + 1);
      for (int j = 1; j <= J; ++j) {
        a[j] = normal(rng) / j;
        b[j] = normal(rng) / j;
      }
      return RealField::sample(grid, [&](double x) {
        double s = 0.0;
        for (int j = 1; j <= J; ++j) {
          const double th = 2.0 * std::numbers::pi * j * (x - x_left) / L;
          s += a[j] * std::cos(th) + b[j] * std::sin(th);
        }
        return s;
      });
    }
    case FunctionKind::GaussianBumps: {
      const int count = 1 + static_cast<int>(unit(rng) * 3.0) % 3;
      std::vector<double> amp(count), c(count), w(count);
      for (int i = 0; i < count; ++i) {
        amp[i] = normal(rng);
        c[i] = -3.0 + 6.0 * unit(rng);
        w[i] = 0.3 + 0.5 * unit(rng);
      }
      return RealField::sample(grid, [&](double x) {
        double s = 0.0;
        for (int i = 0; i < count; ++i) s += amp[i] * std::exp(-std::pow((x - c[i]) / w[i], 2));
        return s;
      });
    }
    case FunctionKind::MollifiedRamps: {
      const double eps = 1.0 + 0.5 * unit(rng);
      const double b = eps * (5.0 + unit(rng));
      const double half = b + 4.0 * unit(rng);
      const double centre = -1.0 + 2.0 * unit(rng);
      const CutoffFamily chi(CutoffParams{eps, b, 0.0, 0.0});
      const double a = centre - half, c = centre + half;
      return RealField::sample(grid, [&](double x) { return chi.chi(x - a) * chi.chi(c - x); });
    }
  }
  throw ContractError("family_member: unknown kind");
}

double spectral_tail_fraction(const RealField& f) {
  const auto F = forward(f);
  const auto n = static_cast<std::int64_t>(F.size());
  double total = 0.0, tail = 0.0;
  for (std::size_t s = 0; s < F.size(); ++s) {
    const double e = std::norm(F[s]);
    total += e;
    if (4 * std::abs(F.grid().mode(s)) > n) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

bool InequalitySuiteResult::all_passed() const {
  const bool reports_ok =
      std::all_of(reports.begin(), reports.end(), [](const RatioReport& r) { return r.finite && r.stable; });
  return reports_ok && symbol.sup >= 0.99 && symbol.sup <= 1.0 + 1e-9 && halfder_route_gap <= 1e-10;
}

InequalitySuiteResult run_inequality_suite(const InequalitySuiteConfig& cfg) {
  if (cfg.samples == 0) throw ContractError("inequality suite: samples must be positive");
  InequalitySuiteResult res;
  res.config = cfg;
  const GridPtr grids[2] = {Grid::make(cfg.n, cfg.length, cfg.x_left), Grid::make(2 * cfg.n, cfg.length, cfg.x_left)};

  struct Ce {
    int l, m;
    double p;
  };
  const std::vector<Ce> ce = {{0, 1, 2}, {0, 1, 4}, {1, 1, 2}, {1, 1, 4}, {1, 3, 2}, {1, 3, 4}};
  const LeibnizExponents fd[2] = {{2, kInf, 2, 2, kInf}, {2, 4, 4, 4, 4}};

  std::vector<std::string> ids;
  for (const auto& c : ce)
    ids.push_back("CE l=" + std::to_string(c.l) + " m=" + std::to_string(c.m) + " p=" + std::to_string(int(c.p)));
  ids.push_back("CE2");
  for (const auto& e : fd) ids.push_back("FD " + e.label());
  ids.push_back("INT1");
  ids.push_back("INT2");
  ids.push_back("INT3");
  res.reports.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) res.reports[i].id = ids[i];

  const FunctionKind kinds[3] = {FunctionKind::RandomTrig, FunctionKind::GaussianBumps, FunctionKind::MollifiedRamps};
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    for (int level = 0; level < 2; ++level) {
      const auto& grid = grids[level];
      const auto f = family_member(kinds[s % 3], cfg.seed, s, 0, grid);
      const auto g = family_member(kinds[(s + 1) % 3], cfg.seed, s, 1, grid);
      std::vector<double> row;
      for (const auto& c : ce) row.push_back(commutator_hilbert(g, f, c.l, c.m, c.p));
      const auto hd = commutator_halfder(g, f);
      res.halfder_route_gap = std::max(res.halfder_route_gap, hd.route_gap);
      row.push_back(hd.ratio);
      for (const auto& e : fd) row.push_back(leibniz_ratio(f, g, 0.5, e));
      const auto centred = f - RealField(grid, std::vector<double>(grid->size(), mean(f)));
      const auto in = interpolation_check(centred);
      row.push_back(in.r1);
      row.push_back(in.r2);
      row.push_back(in.r3);
      for (std::size_t i = 0; i < row.size(); ++i)
        (level == 0 ? res.reports[i].ratios : res.reports[i].ratios_refined).push_back(row[i]);
    }
  }
  for (auto& r : res.reports) {
    auto finite_max = [&r](const std::vector<double>& v) {
      double m = 0.0;
      for (double x : v) {
        if (!std::isfinite(x) || x < 0.0) r.finite = false;
        else m = std::max(m, x);
      }
      return m;
    };
    r.max_ratio = finite_max(r.ratios);
    r.max_ratio_refined = finite_max(r.ratios_refined);
    r.refinement_change =
        r.max_ratio > 0.0 ? std::abs(r.max_ratio_refined - r.max_ratio) / r.max_ratio : r.max_ratio_refined;
    r.stable = r.refinement_change <= 0.2;
  }
  res.symbol = symbol_inequality_scan();
  return res;
}

}  // namespace boprop
