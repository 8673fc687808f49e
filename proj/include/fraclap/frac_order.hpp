#pragma once

#include <numbers>

namespace fraclap {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Order s of the fractional Laplacian, restricted to the open interval (0, 1).
class FracOrder {
 public:
  explicit FracOrder(double s);

  double value() const noexcept { return s_; }
  double two_s() const noexcept { return 2.0 * s_; }
  /// Exponent 1 + 2s of the singular kernel |z|^{-(1+2s)}.
  double kernel_exponent() const noexcept { return 1.0 + 2.0 * s_; }

  friend bool operator==(FracOrder, FracOrder) = default;

 private:
  double s_;
};

}  // namespace fraclap
