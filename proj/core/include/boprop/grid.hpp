#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace boprop {

using Complex = std::complex<double>;

/// Uniform periodic sampling of [x_left, x_left + length).
///
/// Sample i sits at x_left + i * spacing. Spectral slots are stored in FFT
/// order: slot s holds mode j = s for s < n/2 and j = s - n otherwise, so the
/// unpaired Nyquist mode j = -n/2 lives in slot n/2. Wavenumbers are
/// k_j = 2*pi*j / length.
class Grid {
 public:
  static std::shared_ptr<const Grid> make(std::size_t n, double length, double x_left);

  std::size_t size() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double x_left() const noexcept { return x_left_; }
  double x_right() const noexcept { return x_left_ + length_; }
  double spacing() const noexcept { return spacing_; }
  double x(std::size_t i) const noexcept { return x_left_ + static_cast<double>(i) * spacing_; }

  std::span<const double> wavenumbers() const noexcept { return k_; }
  double wavenumber(std::size_t slot) const noexcept { return k_[slot]; }
  std::int64_t mode(std::size_t slot) const noexcept {
    return slot < n_ / 2 ? static_cast<std::int64_t>(slot)
                         : static_cast<std::int64_t>(slot) - static_cast<std::int64_t>(n_);
  }
  std::size_t nyquist_slot() const noexcept { return n_ / 2; }
  /// Slot holding mode j, for -n/2 <= j < n/2.
  std::size_t slot(std::int64_t j) const noexcept {
    return j >= 0 ? static_cast<std::size_t>(j) : static_cast<std::size_t>(j + static_cast<std::int64_t>(n_));
  }

  std::vector<double> coordinates() const;

  /// Same sampling (n, length, x_left), not necessarily the same object.
  bool same_as(const Grid& other) const noexcept;

 private:
  Grid(std::size_t n, double length, double x_left);

  std::size_t n_;
  double length_;
  double x_left_;
  double spacing_;
  std::vector<double> k_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Point samples u(x_i) on a grid. All samples are finite.
class RealField {
 public:
  RealField(GridPtr grid, std::vector<double> samples);

  static RealField zeros(GridPtr grid);
  template <class F>
  static RealField sample(GridPtr grid, F&& f) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->x(i));
    return RealField(std::move(grid), std::move(v));
  }

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return v_.size(); }
  std::span<const double> samples() const noexcept { return v_; }
  double operator[](std::size_t i) const noexcept { return v_[i]; }

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(double a);
  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(RealField a, double s) { return a *= s; }
  friend RealField operator*(double s, RealField a) { return a *= s; }

  /// Pointwise product.
  RealField times(const RealField& o) const;

 private:
  GridPtr grid_;
  std::vector<double> v_;
};

/// Fourier coefficients c_j with u(x) = sum_j c_j exp(i k_j (x - x_left)),
/// stored in the grid's slot order.
class SpectralField {
 public:
  SpectralField(GridPtr grid, std::vector<Complex> coeffs);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return c_.size(); }
  std::span<const Complex> coeffs() const noexcept { return c_; }
  std::span<Complex> coeffs() noexcept { return c_; }
  const Complex& operator[](std::size_t slot) const noexcept { return c_[slot]; }
  Complex& operator[](std::size_t slot) noexcept { return c_[slot]; }

  /// Largest |c_j - conj(c_{-j})| relative to max |c_j|; zero for the
  /// transform of a real field up to roundoff.
  double hermitian_defect() const;

 private:
  GridPtr grid_;
  std::vector<Complex> c_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace boprop
