#include "boprop/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "boprop/errors.hpp"

namespace boprop {

namespace {

// The Kronrod-Gauss difference overestimates the error badly near the flat
// edges of the bump, so an absolute floor well below every caller tolerance
// is accepted.
constexpr double kAbsFloor = 1e-13;

void check(double value, double err, double l1, double rel_tol, double tag_x) {
  if (!std::isfinite(value) || err > std::max(rel_tol * l1 * 10.0, kAbsFloor))
    throw QuadratureError("adaptive quadrature did not converge", tag_x);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol, double tag_x) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  if (a == b) return 0.0;
  double err = 0.0, l1 = 0.0;
  const double rough = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
  if (err <= rel_tol * l1) return rough;
  // Tiny integrals only need absolute accuracy.
  const double tol = std::max(rel_tol, 1e-16 / std::max(l1, 1e-300));
  const double value = GK::integrate(f, a, b, 20, tol, &err, &l1);
  check(value, err, l1, rel_tol, tag_x);
  return value;
}

double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                   double tag_x) {
  if (a == b) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0, l1 = 0.0;
  const double value = ts.integrate([&f](double x) { return f(x); }, a, b, rel_tol, &err, &l1);
  check(value, err, l1, rel_tol, tag_x);
  return value;
}

}  // namespace boprop
