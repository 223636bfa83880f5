#include <doctest.h>

#include <random>

#include "boprop/errors.hpp"
#include "boprop/spectral.hpp"
#include "support.hpp"

using namespace boprop;
using testing::pi;

namespace {

GridPtr two_pi_grid(std::size_t n) { return Grid::make(n, 2 * pi, 0.0); }

RealField random_field(const GridPtr& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(g->size());
  for (auto& x : v) x = d(rng);
  return RealField(g, v);
}

}  // namespace

TEST_CASE("grid slot order and wavenumbers") {
  const auto g = Grid::make(8, 4.0, -2.0);
  CHECK(g->spacing() == doctest::Approx(0.5));
  CHECK(g->mode(0) == 0);
  CHECK(g->mode(3) == 3);
  CHECK(g->mode(4) == -4);
  CHECK(g->mode(7) == -1);
  CHECK(g->slot(-1) == 7);
  CHECK(g->wavenumber(1) == doctest::Approx(2 * pi / 4.0));
  CHECK(g->wavenumber(7) == doctest::Approx(-2 * pi / 4.0));
  CHECK(g->x(2) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(Grid::make(7, 1.0, 0.0), ContractError);
}

TEST_CASE("forward transform of a single mode") {
  const auto g = two_pi_grid(16);
  const auto u = RealField::sample(g, [](double x) { return 3.0 * std::sin(2 * x) + 1.5; });
  const auto F = forward(u);
  // 3 sin(2x) = (3/2i)(e^{2ix} - e^{-2ix})
  CHECK(std::abs(F[0] - Complex(1.5, 0)) < 1e-14);
  CHECK(std::abs(F[g->slot(2)] - Complex(0, -1.5)) < 1e-14);
  CHECK(std::abs(F[g->slot(-2)] - Complex(0, 1.5)) < 1e-14);
  double rest = 0;
  for (std::size_t s = 0; s < 16; ++s)
    if (s != 0 && s != g->slot(2) && s != g->slot(-2)) rest = std::max(rest, std::abs(F[s]));
  CHECK(rest < 1e-14);
  CHECK(F.hermitian_defect() < 1e-14);
}

TEST_CASE("roundtrip and Parseval") {
  const auto g = Grid::make(128, 10.0, -3.0);
  const auto u = random_field(g, 7);
  CHECK(testing::max_abs_diff(inverse(forward(u)), u) < 1e-13);
  double s = 0;
  for (auto c : forward(u).coeffs()) s += std::norm(c);
  CHECK(inner_product(u, u) == doctest::Approx(g->length() * s).epsilon(1e-12));
}

TEST_CASE("Hilbert transform of trigonometric modes") {
  const auto g = two_pi_grid(64);
  const auto c = RealField::sample(g, [](double x) { return std::cos(3 * x); });
  const auto s = RealField::sample(g, [](double x) { return std::sin(3 * x); });
  CHECK(testing::max_abs_diff(hilbert_transform(c), s) < 1e-13);
  CHECK(testing::max_abs_diff(hilbert_transform(s), -1.0 * c) < 1e-13);
}

TEST_CASE("Hilbert transform of the periodic Poisson kernel") {
  // H[(1 - r^2) / (1 - 2 r cos x + r^2)] = 2 r sin x / (1 - 2 r cos x + r^2)
  const double r = 0.5;
  const auto g = two_pi_grid(256);
  const auto p = RealField::sample(g, [r](double x) { return (1 - r * r) / (1 - 2 * r * std::cos(x) + r * r); });
  const auto q = testing::tabulate(*g, [r](double x) { return 2 * r * std::sin(x) / (1 - 2 * r * std::cos(x) + r * r); });
  CHECK(testing::max_abs_diff(hilbert_transform(p), q) < 1e-12);
}

TEST_CASE("fractional and integer derivatives") {
  const auto g = Grid::make(64, 4 * pi, -pi);
  // k = 2 pi * 3 / (4 pi) = 1.5
  const double k = 1.5;
  const auto u = RealField::sample(g, [k](double x) { return std::cos(k * x); });
  for (double s : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const auto ref = testing::tabulate(*g, [k, s](double x) { return std::pow(k, s) * std::cos(k * x); });
    CHECK(testing::max_abs_diff(fractional_derivative(u, s), ref) < 1e-12);
  }
  const auto d3 = testing::tabulate(*g, [k](double x) { return k * k * k * std::sin(k * x); });
  CHECK(testing::max_abs_diff(spatial_derivative(u, 3), d3) < 1e-11);
  const auto constant = RealField::sample(g, [](double) { return 2.0; });
  CHECK(lp_norm(fractional_derivative(constant, 0.5), Norm::Linf) < 1e-14);
}

TEST_CASE("operator identities on random data") {
  const auto g = Grid::make(256, 20.0, -10.0);
  auto u = random_field(g, 3);
  // drop Nyquist, where the odd symbols vanish
  auto F = forward(u);
  F[g->nyquist_slot()] = 0;
  u = inverse(F);
  const double m = mean(u);
  const auto minus_hh = -1.0 * hilbert_transform(hilbert_transform(u));
  CHECK(testing::max_abs_diff(minus_hh, testing::tabulate(*g, [&, i = std::size_t{0}](double) mutable { return u[i++] - m; })) <
        1e-12);
  const auto dd = fractional_derivative(fractional_derivative(u, 0.5), 0.5);
  const auto hd = hilbert_transform(spatial_derivative(u, 1));
  CHECK(testing::max_abs_diff(dd, hd) < 1e-12 * lp_norm(hd, Norm::Linf));
  const auto v = random_field(g, 4);
  CHECK(std::abs(inner_product(hilbert_transform(u), v) + inner_product(u, hilbert_transform(v))) < 1e-12 * g->length());
}

TEST_CASE("dealias rule") {
  CHECK(survives_dealias(0, 16));
  CHECK(survives_dealias(5, 16));
  CHECK(survives_dealias(-5, 16));
  CHECK_FALSE(survives_dealias(6, 16));
  CHECK_FALSE(survives_dealias(-8, 16));
  const auto g = Grid::make(16, 1.0, 0.0);
  auto F = dealias(forward(RealField::sample(g, [](double x) { return std::cos(2 * pi * 6 * x) + std::cos(2 * pi * 5 * x) + 1; })));
  CHECK(std::abs(F[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(F[5] - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(F[6]) == 0.0);
  CHECK(std::abs(F[g->slot(-6)]) == 0.0);
}

TEST_CASE("norms against closed forms") {
  const auto g = two_pi_grid(128);
  const auto u = RealField::sample(g, [](double x) { return std::cos(x); });
  CHECK(lp_norm(u, Norm::L2) == doctest::Approx(std::sqrt(pi)));
  // |cos| has kinks, so the rectangle rule is only second order here
  CHECK(lp_norm(u, Norm::L1) == doctest::Approx(4.0).epsilon(1e-3));
  // int cos^4 = 3 pi / 4
  CHECK(lp_norm(u, Norm::L4) == doctest::Approx(std::pow(3 * pi / 4, 0.25)));
  CHECK(lp_norm(u, 4.0) == doctest::Approx(std::pow(3 * pi / 4, 0.25)));
  CHECK_THROWS_AS(lp_norm(u, 3.0), ContractError);
  // (1 + k^2)^s weight with k = 1: ||cos||_{H^s}^2 = pi 2^s
  CHECK(sobolev_norm(u, 1.5) == doctest::Approx(std::sqrt(pi * std::pow(2.0, 1.5))));
  CHECK(integral(u) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("oversampling reproduces trigonometric polynomials") {
  const auto g = two_pi_grid(16);
  auto f = [](double x) { return std::sin(3 * x) + 0.5 * std::cos(7 * x) - 0.2; };
  const auto u = RealField::sample(g, f);
  const auto w = oversample(u, 4);
  CHECK(w.size() == 64);
  CHECK(testing::max_abs_diff(w, testing::tabulate(w.grid(), f)) < 1e-13);
  // sup of sin(x) sampled off its peak
  const auto s = RealField::sample(Grid::make(8, 2 * pi, 0.3), [](double x) { return std::sin(x); });
  CHECK(sup_norm_oversampled(s, 16) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("mismatched grids are rejected") {
  const auto a = RealField::zeros(Grid::make(16, 1.0, 0.0));
  const auto b = RealField::zeros(Grid::make(16, 2.0, 0.0));
  CHECK_THROWS_AS(inner_product(a, b), ContractError);
}
