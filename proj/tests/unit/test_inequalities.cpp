#include <doctest.h>

#include "boprop/errors.hpp"
#include "boprop/inequalities.hpp"
#include "boprop/spectral.hpp"
#include "support.hpp"

using namespace boprop;
using testing::pi;

namespace {

GridPtr circle(std::size_t n = 64) { return Grid::make(n, 2 * pi, 0.0); }

RealField mode(const GridPtr& g, double k, bool sine = false) {
  return RealField::sample(g, [k, sine](double x) { return sine ? std::sin(k * x) : std::cos(k * x); });
}

}  // namespace

TEST_CASE("Hilbert commutator on trigonometric pairs") {
  const auto g = circle();
  // a low-frequency multiplier commutes with H on higher frequencies
  CHECK(commutator_hilbert(mode(g, 1), mode(g, 3), 0, 1, 2) < 1e-14);
  // psi = cos 3x, f = cos x: [H, psi] f' = -cos 2x, ||psi'||_inf = 3
  CHECK(commutator_hilbert(mode(g, 3), mode(g, 1), 0, 1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(commutator_hilbert(mode(g, 3), mode(g, 1), 0, 1, 4) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // d_x of -cos 2x is 2 sin 2x; ||psi''||_inf = 9
  CHECK(commutator_hilbert(mode(g, 3), mode(g, 1), 1, 1, 2) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
  const auto one = RealField::sample(g, [](double) { return 1.0; });
  CHECK(commutator_hilbert(one, mode(g, 2), 1, 3, 2) == 0.0);
  CHECK_THROWS_AS(commutator_hilbert(mode(g, 3), mode(g, 1), 0, 1, 3), ContractError);
}

TEST_CASE("half-derivative commutator closed form") {
  const auto g = circle();
  // h = cos x, f = cos 2x: [D^{1/2}, h] f' = (sqrt2 - sqrt3) sin 3x + (sqrt2 - 1) sin x
  const auto r = commutator_halfder(mode(g, 1), mode(g, 2));
  const double a = std::sqrt(2.0) - std::sqrt(3.0), b = std::sqrt(2.0) - 1.0;
  CHECK(r.numerator == doctest::Approx(std::sqrt(pi * (a * a + b * b))).epsilon(1e-12));
  // (h')^ = {+-i/2}: l1 norm 1; ||D^{1/2} cos 2x||_2 = sqrt(2 pi)
  CHECK(r.h_prime_hat_l1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.half_norm_f == doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(r.numerator / (r.h_prime_hat_l1 * r.half_norm_f)));
  CHECK(r.route_gap < 1e-12);
  const auto op = halfder_commutator_operator(mode(g, 1), mode(g, 2));
  CHECK(op.size() == 128);
  const auto ref = testing::tabulate(op.grid(), [a, b](double x) { return a * std::sin(3 * x) + b * std::sin(x); });
  CHECK(testing::max_abs_diff(op, ref) < 1e-12);
  const auto fr = inverse(halfder_commutator_fourier(mode(g, 1), mode(g, 2)));
  CHECK(testing::max_abs_diff(fr, ref) < 1e-12);
}

TEST_CASE("symbol ratio") {
  CHECK(symbol_ratio(0.0, 2.5) == doctest::Approx(1.0));
  CHECK(symbol_ratio(4.0, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(symbol_ratio(1.0, 4.0) == doctest::Approx(2.0 / 3.0));
  CHECK(symbol_ratio(-4.0, 1.0) == doctest::Approx(1.0 / 5.0));
  const auto s = symbol_inequality_scan(1.0, 0.25);
  const std::size_t pts = 9;
  CHECK(s.evaluated == pts * pts - 2 * pts + 1);
  CHECK(s.sup == doctest::Approx(1.0));
  CHECK(s.sup <= 1.0 + 1e-12);
}

TEST_CASE("fractional Leibniz") {
  const auto g = circle();
  const auto one = RealField::sample(g, [](double) { return 1.0; });
  const LeibnizExponents e{2, INFINITY, 2, 2, INFINITY};
  CHECK_NOTHROW(e.validate());
  // f = 1: D^a(fg) = D^a g and D^a f = 0
  CHECK(leibniz_ratio(one, mode(g, 3), 0.5, e) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(LeibnizExponents({2, 4, 2, 2, INFINITY}).validate(), ContractError);
  CHECK_THROWS_AS(LeibnizExponents({4, 4, INFINITY, 4, INFINITY}).validate(), ContractError);
  CHECK_NOTHROW(LeibnizExponents({2, 4, 4, 4, 4}).validate());
  CHECK_THROWS_AS(leibniz_ratio(one, one, 1.5, e), ContractError);
}

TEST_CASE("interpolation ratios of a single mode") {
  const auto g = circle(128);
  const auto r = interpolation_check(mode(g, 1));
  const double l4 = std::pow(3 * pi / 4, 0.25);
  CHECK(r.r1 == doctest::Approx(l4 / std::sqrt(pi)));
  CHECK(r.r2 == doctest::Approx(1.0));
  CHECK(r.r3 == doctest::Approx(l4 / std::sqrt(pi)));
  const auto shifted = RealField::sample(g, [](double x) { return 1 + std::cos(x); });
  CHECK_THROWS_AS(interpolation_check(shifted), ContractError);
}

TEST_CASE("seeded function families") {
  const auto g = Grid::make(1024, 32.0, -16.0);
  const auto g2 = Grid::make(2048, 32.0, -16.0);
  for (auto kind : {FunctionKind::RandomTrig, FunctionKind::GaussianBumps, FunctionKind::MollifiedRamps}) {
    INFO(to_string(kind));
    const auto a = family_member(kind, 7, 3, 0, g);
    const auto b = family_member(kind, 7, 3, 0, g);
    const auto c = family_member(kind, 7, 3, 1, g);
    const auto fine = family_member(kind, 7, 3, 0, g2);
    CHECK(testing::max_abs_diff(a, b) == 0.0);
    CHECK(testing::max_abs_diff(a, c) > 1e-3);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(fine[2 * i] == a[i]);
    CHECK(spectral_tail_fraction(a) < 1e-12);
  }
}

TEST_CASE("small suite run") {
  InequalitySuiteConfig cfg;
  cfg.n = 512;
  cfg.samples = 6;
  const auto r = run_inequality_suite(cfg);
  CHECK(r.reports.size() == 12);
  for (const auto& rep : r.reports) {
    INFO(rep.id);
    CHECK(rep.ratios.size() == 6);
    CHECK(rep.ratios_refined.size() == 6);
    CHECK(rep.finite);
    CHECK(std::isfinite(rep.max_ratio));
  }
  CHECK(r.halfder_route_gap < 1e-10);
  CHECK(r.symbol.sup == doctest::Approx(1.0));
}
