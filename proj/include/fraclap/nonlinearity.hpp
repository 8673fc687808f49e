#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fraclap {

/// A scalar C¹ nonlinearity f with derivative and primitive F(t) = ∫_0^t f.
struct Nonlinearity {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(double)> primitive;
};

/// |t|^{p-1} t.
Nonlinearity power_odd(double p);
/// |t|^p.
Nonlinearity power_even(double p);
/// t^n for an integer n >= 2.
Nonlinearity monomial(int n);
/// sum_m c[m] t^{m+2}: the coefficient list starts at the quadratic term.
Nonlinearity polynomial(std::vector<double> coeffs_from_quadratic);
Nonlinearity zero_nonlinearity();

/// Looks up "u2", "u3", "zero", "odd:<p>" or "even:<p>".
Nonlinearity nonlinearity_from_name(const std::string& name);

/// f on [-1, 1] continued linearly outside with matching value and slope.
struct TruncatedNonlinearity {
  Nonlinearity base;
  /// A constant with |f̃(t)| <= C |t| for all t.
  double lipschitz_bound;

  double value(double t) const;
  double derivative(double t) const;
  Nonlinearity as_nonlinearity() const;
};

/// Rejects f with f'(0) != 0 (beyond 1e-12).
TruncatedNonlinearity truncate_nonlinearity(const Nonlinearity& f);

}  // namespace fraclap
