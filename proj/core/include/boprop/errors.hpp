#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace boprop {

/// A caller violated a documented precondition (bad sizes, bad parameters).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature failed to reach its tolerance at abscissa `x`.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double x)
      : std::runtime_error(what + " (x = " + std::to_string(x) + ")"), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// The numerical solution became non-finite or exceeded the configured
/// sup-norm ceiling. Carries the time of failure and the sup-norm history
/// recorded up to that point.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double t, std::vector<double> sup_history)
      : std::runtime_error(what), t_(t), history_(std::move(sup_history)) {}
  double time() const noexcept { return t_; }
  const std::vector<double>& sup_history() const noexcept { return history_; }

 private:
  double t_;
  std::vector<double> history_;
};

}  // namespace boprop
