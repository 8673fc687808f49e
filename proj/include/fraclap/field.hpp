#pragma once

#include "fraclap/frac_order.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <vector>

namespace fraclap {

/// Real 2π-periodic function stored as a truncated Fourier series
///   u(x) = a_0/2 + sum_{j=1}^{N} a_j cos(jx) + b_j sin(jx).
/// Both coefficient arrays have N+1 entries so that index j always refers to
/// frequency j; b_0 has no meaning and is ignored by every operation.
class SpectralField {
 public:
  explicit SpectralField(int n_modes);
  SpectralField(std::vector<double> a, std::vector<double> b);

  static SpectralField constant(int n_modes, double value);
  static SpectralField cosine(int n_modes, int k, double amplitude = 1.0);
  static SpectralField sine(int n_modes, int k, double amplitude = 1.0);

  int n_modes() const noexcept { return static_cast<int>(a_.size()) - 1; }

  double a(int j) const { return a_.at(static_cast<size_t>(j)); }
  double b(int j) const { return b_.at(static_cast<size_t>(j)); }
  double& a(int j) { return a_.at(static_cast<size_t>(j)); }
  double& b(int j);

  std::span<const double> cos_coeffs() const noexcept { return a_; }
  std::span<const double> sin_coeffs() const noexcept { return b_; }

  /// Pointwise evaluation by direct summation.
  double operator()(double x) const;
  /// The mean value a_0/2.
  double mean() const noexcept { return 0.5 * a_[0]; }

  /// x -> u(x + tau).
  SpectralField shifted(double tau) const;
  /// Exact derivative of the series.
  SpectralField derivative() const;
  /// Zero-padded or truncated copy with n_modes coefficients.
  SpectralField resized(int n_modes) const;
  /// True when every coefficient is finite.
  bool is_finite() const noexcept;
  /// True when every b_j vanishes.
  bool is_even(double tol = 0.0) const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double c);

  friend SpectralField operator+(SpectralField u, const SpectralField& v) { return u += v; }
  friend SpectralField operator-(SpectralField u, const SpectralField& v) { return u -= v; }
  friend SpectralField operator*(double c, SpectralField u) { return u *= c; }
  friend SpectralField operator*(SpectralField u, double c) { return u *= c; }
  friend SpectralField operator-(SpectralField u) { return u *= -1.0; }

  /// Largest coefficient difference between two fields of any size.
  friend double max_coeff_diff(const SpectralField& u, const SpectralField& v);

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Samples of a 2π-periodic function at x_i = 2πi/n, n a power of two >= 4.
class GridField {
 public:
  explicit GridField(std::vector<double> values);

  int n_pts() const noexcept { return static_cast<int>(values_.size()); }
  double spacing() const noexcept;
  double node(int i) const noexcept { return spacing() * i; }
  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
  std::span<const double> values() const noexcept { return values_; }

  double min() const;
  double max() const;

 private:
  std::vector<double> values_;
};

bool is_power_of_two(int n) noexcept;
/// Smallest power of two that is >= max(n, 4).
int next_power_of_two(int n) noexcept;

/// Samples u at n_pts nodes. Requires n_pts >= 2 n_modes + 2.
GridField to_grid(const SpectralField& u, int n_pts);
/// Discrete Fourier projection onto n_modes modes. Requires n_pts >= 2 n_modes + 2.
SpectralField from_grid(const GridField& g, int n_modes);
/// Applies a pointwise map on a grid of n_pts nodes and projects back onto
/// n_modes modes.
template <class F>
SpectralField map_pointwise(const SpectralField& u, int n_pts, int n_modes, F&& f) {
  GridField g = to_grid(u, n_pts);
  std::vector<double> out(g.values().begin(), g.values().end());
  for (double& v : out) v = f(v);
  return from_grid(GridField(std::move(out)), n_modes);
}

/// A T-periodic function u(x) = shape(2πx/T).
struct PeriodicProfile {
  SpectralField shape;
  double period;

  double operator()(double x) const;
  /// Frequency scale 2π/T.
  double wavenumber() const noexcept;
};

nlohmann::json to_json(const SpectralField& u);
SpectralField field_from_json(const nlohmann::json& j);

/// Two-column CSV "x,u" of the field on n_pts nodes of [0, period).
std::string to_csv(const SpectralField& u, int n_pts, double period = kTwoPi);

}  // namespace fraclap
