#include "boprop/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "boprop/errors.hpp"
#include "fft.hpp"

namespace boprop {

SpectralField forward(const RealField& f) {
  const std::size_t n = f.size();
  std::vector<Complex> in(n), out(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = f[i];
  detail::dft_forward(in, out);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& c : out) c *= inv_n;
  return SpectralField(f.grid_ptr(), std::move(out));
}

RealField inverse(const SpectralField& F) {
  const std::size_t n = F.size();
  std::vector<Complex> out(n);
  detail::dft_backward(F.coeffs(), out);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = out[i].real();
  return RealField(F.grid_ptr(), std::move(v));
}

RealField apply_multiplier(const RealField& f, const std::function<Complex(double)>& symbol, bool odd) {
  auto F = forward(f);
  const auto& g = f.grid();
  for (std::size_t s = 0; s < F.size(); ++s) F[s] *= symbol(g.wavenumber(s));
  if (odd) F[g.nyquist_slot()] = 0.0;
  return inverse(F);
}

RealField hilbert_transform(const RealField& f) {
  return apply_multiplier(
      f, [](double k) { return k > 0 ? Complex(0, -1) : (k < 0 ? Complex(0, 1) : Complex(0)); }, true);
}

RealField fractional_derivative(const RealField& f, double s) {
  if (!(s >= 0.0)) throw ContractError("fractional_derivative: order must be nonnegative");
  return apply_multiplier(
      f, [s](double k) { return k == 0.0 ? Complex(0) : Complex(std::pow(std::abs(k), s)); }, false);
}

RealField spatial_derivative(const RealField& f, int m) {
  if (m < 0) throw ContractError("spatial_derivative: order must be nonnegative");
  if (m == 0) return f;
  return apply_multiplier(
      f, [m](double k) { return std::pow(Complex(0, k), m); }, m % 2 == 1);
}

bool survives_dealias(std::int64_t j, std::size_t n) noexcept {
  return 3 * std::abs(j) <= static_cast<std::int64_t>(n);
}

SpectralField dealias(SpectralField F) {
  const auto& g = F.grid();
  for (std::size_t s = 0; s < F.size(); ++s)
    if (!survives_dealias(g.mode(s), g.size())) F[s] = 0.0;
  return F;
}

double lp_norm(const RealField& f, Norm p) {
  const double h = f.grid().spacing();
  const auto v = f.samples();
  switch (p) {
    case Norm::L1: {
      double acc = 0.0;
      for (double x : v) acc += std::abs(x);
      return h * acc;
    }
    case Norm::L2: {
      double acc = 0.0;
      for (double x : v) acc += x * x;
      return std::sqrt(h * acc);
    }
    case Norm::L4: {
      double acc = 0.0;
      for (double x : v) acc += x * x * x * x;
      return std::pow(h * acc, 0.25);
    }
    case Norm::Linf: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

double lp_norm(const RealField& f, double p) {
  if (p == 1.0) return lp_norm(f, Norm::L1);
  if (p == 2.0) return lp_norm(f, Norm::L2);
  if (p == 4.0) return lp_norm(f, Norm::L4);
  if (p == std::numeric_limits<double>::infinity()) return lp_norm(f, Norm::Linf);
  throw ContractError("lp_norm: p must be one of 1, 2, 4, inf");
}

double sobolev_norm(const RealField& f, double s) {
  const auto F = forward(f);
  const auto& g = f.grid();
  double acc = 0.0;
  for (std::size_t j = 0; j < F.size(); ++j) {
    const double k = g.wavenumber(j);
    acc += std::pow(1.0 + k * k, s) * std::norm(F[j]);
  }
  return std::sqrt(g.length() * acc);
}

double integral(const RealField& f) {
  double acc = 0.0;
  for (double x : f.samples()) acc += x;
  return f.grid().spacing() * acc;
}

double inner_product(const RealField& f, const RealField& g) {
  require_same_grid(f.grid(), g.grid(), "inner_product");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * g[i];
  return f.grid().spacing() * acc;
}

double mean(const RealField& f) { return integral(f) / f.grid().length(); }

RealField oversample(const RealField& f, std::size_t factor) {
  if (factor == 0 || (factor & (factor - 1)) != 0) throw ContractError("oversample: factor must be a power of two");
  if (factor == 1) return f;
  const auto& g = f.grid();
  const auto fine = Grid::make(g.size() * factor, g.length(), g.x_left());
  const auto F = forward(f);
  std::vector<Complex> c(fine->size(), 0.0);
  const auto half = static_cast<std::int64_t>(g.size() / 2);
  for (std::int64_t j = -half + 1; j < half; ++j) c[fine->slot(j)] = F[g.slot(j)];
  const Complex nyq = F[g.nyquist_slot()];
  c[fine->slot(half)] = 0.5 * nyq;
  c[fine->slot(-half)] = 0.5 * nyq;
  return inverse(SpectralField(fine, std::move(c)));
}

double sup_norm_oversampled(const RealField& f, std::size_t factor) {
  return lp_norm(oversample(f, factor), Norm::Linf);
}

}  // namespace boprop
