#pragma once

#include <functional>

#include "boprop/grid.hpp"

namespace boprop {

// Normalization, stated once for the whole library:
//   forward:  c_j = (1/n) sum_i u_i exp(-2 pi i j i / n)
//   inverse:  u_i = sum_j c_j exp(+2 pi i j i / n)
//   Parseval: integral of |u|^2 over the period = length * sum_j |c_j|^2
// Every norm and inner product below routes through this convention.

SpectralField forward(const RealField& f);
/// Real part of the inverse transform.
RealField inverse(const SpectralField& F);

/// Applies symbol(k) coefficient-wise to the spectrum of f.
/// When `odd` is set the Nyquist slot is zeroed.
RealField apply_multiplier(const RealField& f, const std::function<Complex(double)>& symbol, bool odd);

/// Symbol -i sgn(k), sgn(0) = 0, Nyquist zeroed.
RealField hilbert_transform(const RealField& f);
/// Symbol |k|^s for s >= 0; the mean mode maps to zero for every s.
RealField fractional_derivative(const RealField& f, double s);
/// Symbol (i k)^m; Nyquist zeroed for odd m.
RealField spatial_derivative(const RealField& f, int m);

/// 2/3 rule: zero every slot with |j| > n/3 (this always includes Nyquist).
SpectralField dealias(SpectralField F);
/// True if slot s survives the 2/3 rule on an n-point grid.
bool survives_dealias(std::int64_t j, std::size_t n) noexcept;

enum class Norm { L1, L2, L4, Linf };
/// Rectangle-rule L^p norm, p in {1, 2, 4, inf}.
double lp_norm(const RealField& f, Norm p);
/// Accepts p = 1, 2, 4 or +infinity; anything else is a ContractError.
double lp_norm(const RealField& f, double p);
/// (length * sum (1 + k^2)^s |c_j|^2)^{1/2}.
double sobolev_norm(const RealField& f, double s);

/// Rectangle-rule integral and L^2 inner product.
double integral(const RealField& f);
double inner_product(const RealField& f, const RealField& g);
double mean(const RealField& f);

/// Trigonometric interpolation onto a grid with `factor` times as many points
/// (zero padding; Nyquist content is split symmetrically).
RealField oversample(const RealField& f, std::size_t factor);
/// Sup norm on a `factor`-times oversampled grid.
double sup_norm_oversampled(const RealField& f, std::size_t factor = 4);

}  // namespace boprop
