#include <doctest.h>

#include "boprop/cutoff.hpp"
#include "boprop/datum.hpp"
#include "boprop/errors.hpp"
#include "boprop/spectral.hpp"
#include "support.hpp"

using namespace boprop;
using testing::pi;

TEST_CASE("gaussian datum") {
  const auto g = Grid::make(128, 20.0, -10.0);
  const auto u = make_datum({GaussianDatum{2.0, 1.0, 0.5}}, g);
  const auto ref = testing::tabulate(*g, [](double x) { return 2.0 * std::exp(-std::pow((x - 1.0) / 0.5, 2)); });
  CHECK(testing::max_abs_diff(u, ref) < 1e-15);
  CHECK_THROWS_AS(make_datum({GaussianDatum{1.0, 0.0, 0.0}}, g), ContractError);
}

TEST_CASE("one-sided datum") {
  const OneSidedDatum d{1.3, 0.0, 1.0, 4.0, 0.5, 3.0, 1.0};
  auto ref = [&](double x) {
    double v = 0.5 * std::exp(-std::pow(x - 3.0, 2));
    const double r = x / 4.0;
    if (x < 0 && r * r < 1) v += std::pow(-x, 1.3) * std::exp(1 - 1 / (1 - r * r));
    return v;
  };
  for (double x : {-5.0, -3.9, -2.0, -0.5, -1e-3, 0.0, 0.7, 3.0, 9.0})
    CHECK(datum_value({d}, x, 200.0) == doctest::Approx(ref(x)).epsilon(1e-14));
  // w(x0) = 1
  CHECK(datum_value({OneSidedDatum{1.3, 0.0, 1.0, 4.0, 0.0}}, -1e-8, 200.0) == doctest::Approx(std::pow(1e-8, 1.3)));
  const auto near_seam = Grid::make(256, 20.0, -10.0);
  CHECK_THROWS_AS(make_datum({OneSidedDatum{1.3, 9.0}}, near_seam), ContractError);
}

TEST_CASE("mollified gaussian against direct convolution") {
  const auto g = Grid::make(256, 20.0, -10.0);
  const double tau = 0.4;
  const auto u = make_datum(mollified({GaussianDatum{1.0, 0.3, 0.7}}, tau), g);
  auto inner = [](double x) { return std::exp(-std::pow((x - 0.3) / 0.7, 2)); };
  for (std::size_t i = 96; i < 160; i += 7) {
    const double x = g->x(i);
    const double ref = testing::simpson([&](double y) { return mollifier_scaled(y, tau) * inner(x - y); }, -tau, tau, 4000);
    CHECK(u[i] == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("mollified one-sided datum against direct convolution") {
  const auto g = Grid::make(512, 40.0, -20.0);
  const OneSidedDatum d{1.3, 0.0, 1.0, 4.0};
  const double tau = 0.3;
  const auto u = make_datum(mollified({d}, tau), g);
  for (double x : {-2.0, -0.2, 0.0, 0.1, 0.25}) {
    // split at the singular point so Simpson sees smooth pieces
    auto f = [&](double y) { return mollifier_scaled(y, tau) * datum_value({d}, x - y, 40.0); };
    double ref = 0.0;
    const double split = x;  // y = x maps to x - y = 0
    if (split > -tau && split < tau)
      ref = testing::simpson(f, -tau, split, 20000) + testing::simpson(f, split, tau, 20000);
    else
      ref = testing::simpson(f, -tau, tau, 40000);
    CHECK(datum_value(mollified({d}, tau), x, 40.0) == doctest::Approx(ref).epsilon(1e-7));
  }
  CHECK(u.size() == 512);
}

TEST_CASE("mollified samples use the spectral route") {
  const auto g = Grid::make(256, 20.0, -10.0);
  std::vector<double> v(256);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-g->x(i) * g->x(i));
  const auto a = make_datum(mollified({SamplesDatum{v}}, 0.3), g);
  const auto b = make_datum(mollified({GaussianDatum{1.0, 0.0, 1.0}}, 0.3), g);
  CHECK(testing::max_abs_diff(a, b) < 1e-9);
  CHECK_THROWS_AS(make_datum({SamplesDatum{std::vector<double>(10)}}, g), ContractError);
}

TEST_CASE("periodic soliton") {
  const double c = 1.3, L = 50.0;
  // mass over one period is 4 pi for every period
  const auto g = Grid::make(2048, L, -L / 2);
  const auto u = RealField::sample(g, [&](double x) { return periodic_soliton(c, L, x, 0.0, 0.0, 1); });
  CHECK(integral(u) == doctest::Approx(4 * pi).epsilon(1e-12));
  // approaches the line soliton as the period grows
  for (double x : {-3.0, 0.0, 0.4, 2.0})
    CHECK(periodic_soliton(c, 1e5, x, 0.0, 0.0, 1) == doctest::Approx(4 * c / (1 + c * c * x * x)).epsilon(1e-8));
  const double kappa = 2 * pi / L;
  CHECK(periodic_soliton_speed(c, L) == doctest::Approx(kappa / std::tanh(kappa / c)));
  // traveling: profile at t equals profile at 0 shifted by speed * t
  const double s = periodic_soliton_speed(c, L);
  CHECK(periodic_soliton(c, L, 1.0 + s * 0.7, 0.7, 0.0, 1) == doctest::Approx(periodic_soliton(c, L, 1.0, 0.0, 0.0, 1)));
  CHECK(soliton(c, 1.0 + c * 0.5, 0.5, 0.0, 1) == doctest::Approx(soliton(c, 1.0, 0.0, 0.0, 1)));
}

TEST_CASE("soliton direction oracle") {
  const auto g = Grid::make(1024, 100.0, -50.0);
  const double good = soliton_residual(1.0, g, 1);
  const double bad = soliton_residual(1.0, g, -1);
  CHECK(good < 1e-8);
  CHECK(bad > 0.1);
  const auto o = soliton_direction_oracle();
  CHECK(o.sigma == 1);
  CHECK(o.rejected > 0.1);
  CHECK(soliton_direction() == 1);
}
