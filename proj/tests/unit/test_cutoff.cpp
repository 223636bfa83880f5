#include <doctest.h>

#include "boprop/cutoff.hpp"
#include "boprop/errors.hpp"
#include "support.hpp"

using namespace boprop;

namespace {

double raw_bump(double x) { return std::abs(x) < 1 ? std::exp(1.0 / (x * x - 1.0)) : 0.0; }

double ramp(double x, double eps, double b) {
  if (x <= 2 * eps) return 0.0;
  if (x >= b - eps) return 1.0;
  return (x - 2 * eps) / (b - 3 * eps);
}

// chi by direct convolution of the scaled bump with the ramp
double chi_direct(double x, double eps, double b) {
  const double c = 1.0 / testing::simpson(raw_bump, -1, 1, 20000);
  return testing::simpson([&](double y) { return c * raw_bump(y / eps) / eps * ramp(x - y, eps, b); }, -eps, eps,
                          40000);
}

}  // namespace

TEST_CASE("mollifier normalization") {
  const double mass = testing::simpson(raw_bump, -1, 1, 20000);
  CHECK(mass == doctest::Approx(0.443993816168).epsilon(1e-11));
  CHECK(mollifier_normalization() == doctest::Approx(1.0 / mass).epsilon(1e-12));
  CHECK(mollifier_rho(0.0) == doctest::Approx(std::exp(-1.0) / mass).epsilon(1e-12));
  CHECK(mollifier_rho(1.0) == 0.0);
  CHECK(mollifier_rho(-1.5) == 0.0);
  CHECK(mollifier_scaled(0.05, 0.1) == doctest::Approx(mollifier_rho(0.5) / 0.1));
}

TEST_CASE("mollifier partial masses") {
  CHECK(mollifier_mass(-1, 1) == 1.0);
  CHECK(mollifier_mass(-3, 3) == 1.0);
  CHECK(mollifier_mass(-1, 0) == doctest::Approx(0.5).epsilon(1e-12));
  const double c = 1.0 / testing::simpson(raw_bump, -1, 1, 20000);
  for (auto [a, b] : {std::pair{-0.3, 0.7}, std::pair{0.5, 0.9}, std::pair{-0.99, -0.9}}) {
    const double ref = c * testing::simpson(raw_bump, a, b, 20000);
    CHECK(mollifier_mass(a, b) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(CutoffParams{0.1, 0.5}.validate());
  CHECK_THROWS_AS(CutoffParams({0.1, 0.49}).validate(), ContractError);
  CHECK_THROWS_AS(CutoffParams({0.0, 1.0}).validate(), ContractError);
  CHECK_THROWS_AS(CutoffParams({-0.1, 1.0}).validate(), ContractError);
  try {
    CutoffParams{0.2, 0.5}.validate();
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("5 eps") != std::string::npos);
  }
}

TEST_CASE("ramp") {
  const CutoffParams p{0.1, 0.5};
  CHECK(ramp_nu(0.2, p) == 0.0);
  CHECK(ramp_nu(0.4, p) == 1.0);
  CHECK(ramp_nu(0.3, p) == doctest::Approx(0.5));
  CHECK(p.ramp_slope() == doctest::Approx(5.0));
}

TEST_CASE("chi against direct convolution") {
  for (auto [eps, b] : {std::pair{0.1, 0.5}, std::pair{0.2, 1.0}, std::pair{0.05, 0.4}}) {
    const CutoffFamily f({eps, b});
    for (double x : {0.5 * eps, eps, 1.3 * eps, 2.0 * eps, 2.7 * eps, 0.5 * (b + eps), b - 1.5 * eps, b - 0.2 * eps, b,
                     b + eps}) {
      CHECK(f.chi(x) == doctest::Approx(chi_direct(x, eps, b)).epsilon(1e-8));
    }
  }
}

TEST_CASE("chi support, slope and companions") {
  const double eps = 0.1, b = 0.5;
  const CutoffFamily f({eps, b});
  CHECK(f.chi(eps) == 0.0);
  CHECK(f.chi(-3.0) == 0.0);
  CHECK(f.chi(b) == 1.0);
  CHECK(f.chi(7.0) == 1.0);
  for (double x = 3 * eps + 0.01; x < b - 2 * eps; x += 0.01) CHECK(f.chi_prime(x) == doctest::Approx(1.0 / (b - 3 * eps)));
  const double h = 1e-5;
  for (double x : {1.5 * eps, 2.2 * eps, 3.5 * eps, b - 1.5 * eps, b - 0.5 * eps}) {
    CHECK(f.chi_prime(x) == doctest::Approx((f.chi(x + h) - f.chi(x - h)) / (2 * h)).epsilon(1e-6));
    CHECK(f.chi_second(x) == doctest::Approx((f.chi_prime(x + h) - f.chi_prime(x - h)) / (2 * h)).epsilon(1e-5));
    CHECK(f.eta(x) * f.eta(x) == doctest::Approx(f.chi_prime(x)).epsilon(1e-12));
    CHECK(f.eta_prime(x) == doctest::Approx((f.eta(x + h) - f.eta(x - h)) / (2 * h)).epsilon(1e-5));
  }
  // chi' integrates to one
  CHECK(testing::simpson([&](double x) { return f.chi_prime(x); }, 0.0, 0.6, 6000) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("moving window and sampling") {
  const CutoffFamily f({0.1, 0.5, 2.0, 1.5});
  CHECK(f.chi_at(2.3, 0.0) == doctest::Approx(f.chi(0.3)));
  CHECK(f.chi_at(2.3, 0.1) == doctest::Approx(f.chi(0.45)));
  const auto g = Grid::make(64, 4.0, 0.0);
  const auto s = f.sample(*g, -2.0);
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(s.chi[i] == doctest::Approx(f.chi(g->x(i) - 2.0)));
    CHECK(s.chi_prime[i] == doctest::Approx(f.chi_prime(g->x(i) - 2.0)));
  }
  const auto again = f.sample(*g, -2.0);
  CHECK(again.eta == s.eta);
}

TEST_CASE("certification passes on the default families") {
  for (auto [eps, b] : {std::pair{0.1, 0.5}, std::pair{0.2, 1.0}, std::pair{0.05, 0.25}}) {
    const CutoffParams p{eps, b};
    const auto rep = verify_family(p, *default_probe(p));
    for (const auto& c : rep.checks) {
      INFO(c.id << ": " << c.observed << " vs " << c.bound);
      CHECK(c.passed);
    }
    CHECK(rep.chi_at_3eps > 0.0);
    CHECK(std::isfinite(rep.cl_constant_2));
    CHECK(std::isfinite(rep.cl_constant_3));
  }
}

TEST_CASE("certification rejects a coarse probe") {
  const CutoffParams p{0.1, 0.5};
  CHECK_THROWS_AS(verify_family(p, *Grid::make(16, 1.0, -0.1)), ContractError);
}
