#include "boprop/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "boprop/errors.hpp"

namespace boprop {

Grid::Grid(std::size_t n, double length, double x_left)
    : n_(n), length_(length), x_left_(x_left), spacing_(length / static_cast<double>(n)), k_(n) {
  const double dk = 2.0 * std::numbers::pi / length;
  for (std::size_t s = 0; s < n; ++s) k_[s] = dk * static_cast<double>(mode(s));
}

std::shared_ptr<const Grid> Grid::make(std::size_t n, double length, double x_left) {
  if (n < 8 || (n & (n - 1)) != 0) throw ContractError("Grid: n must be a power of two >= 8");
  if (!(length > 0.0) || !std::isfinite(length)) throw ContractError("Grid: length must be positive and finite");
  if (!std::isfinite(x_left)) throw ContractError("Grid: x_left must be finite");
  return std::shared_ptr<const Grid>(new Grid(n, length, x_left));
}

std::vector<double> Grid::coordinates() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = this->x(i);
  return x;
}

bool Grid::same_as(const Grid& o) const noexcept {
  return n_ == o.n_ && length_ == o.length_ && x_left_ == o.x_left_;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!a.same_as(b)) throw ContractError(std::string(where) + ": fields live on different grids");
}

RealField::RealField(GridPtr grid, std::vector<double> samples) : grid_(std::move(grid)), v_(std::move(samples)) {
  if (!grid_) throw ContractError("RealField: null grid");
  if (v_.size() != grid_->size()) throw ContractError("RealField: sample count does not match grid size");
  if (!std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); }))
    throw ContractError("RealField: non-finite sample");
}

RealField RealField::zeros(GridPtr grid) {
  const auto n = grid->size();
  return RealField(std::move(grid), std::vector<double>(n, 0.0));
}

RealField& RealField::operator+=(const RealField& o) {
  require_same_grid(*grid_, *o.grid_, "RealField::operator+=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  require_same_grid(*grid_, *o.grid_, "RealField::operator-=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

RealField& RealField::operator*=(double a) {
  for (auto& x : v_) x *= a;
  return *this;
}

RealField RealField::times(const RealField& o) const {
  require_same_grid(*grid_, *o.grid_, "RealField::times");
  std::vector<double> w(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) w[i] = v_[i] * o.v_[i];
  return RealField(grid_, std::move(w));
}

SpectralField::SpectralField(GridPtr grid, std::vector<Complex> coeffs) : grid_(std::move(grid)), c_(std::move(coeffs)) {
  if (!grid_) throw ContractError("SpectralField: null grid");
  if (c_.size() != grid_->size()) throw ContractError("SpectralField: coefficient count does not match grid size");
}

double SpectralField::hermitian_defect() const {
  double scale = 0.0, defect = 0.0;
  const std::size_t n = c_.size();
  for (std::size_t s = 0; s < n; ++s) {
    scale = std::max(scale, std::abs(c_[s]));
    const std::size_t mirror = (n - s) % n;
    defect = std::max(defect, std::abs(c_[s] - std::conj(c_[mirror])));
  }
  return scale > 0.0 ? defect / scale : defect;
}

}  // namespace boprop
