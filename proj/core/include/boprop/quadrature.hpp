#pragma once

#include <functional>

namespace boprop {

/// Adaptive Gauss-Kronrod quadrature of f over [a, b] to relative tolerance
/// `rel_tol` (measured against the L1 norm of f on the interval). Integrals
/// whose L1 norm is below 1e-16 are not refined further.
/// Throws QuadratureError tagged with `tag_x` when the tolerance is missed.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-13,
                          double tag_x = 0.0);

/// Tanh-sinh quadrature for integrands with algebraic singularities at the
/// endpoints (same tolerance contract).
double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   double rel_tol = 1e-12, double tag_x = 0.0);

}  // namespace boprop
