#pragma once

#include "fraclap/field.hpp"
#include "fraclap/frac_order.hpp"
#include "fraclap/operator.hpp"

#include <span>
#include <vector>

namespace fraclap {

/// Solution operator of 𝓛u + u = f: the Fourier multiplier 1/(j^{2s}+1).
class ResolventK {
 public:
  ResolventK(FracOrder s, int n_modes);

  FracOrder order() const noexcept { return s_; }
  int n_modes() const noexcept { return static_cast<int>(diag_.size()) - 1; }
  std::span<const double> diag() const noexcept { return diag_; }

  SpectralField apply(const SpectralField& f) const;

 private:
  FracOrder s_;
  std::vector<double> diag_;
};

/// Unique solution of 𝓛u + u = f.
SpectralField solve_linear(const SpectralField& f, FracOrder s);

/// L² norm of 𝓛u + u - f.
double linear_residual(const SpectralField& u, const SpectralField& f, FracOrder s);

struct EigenEntry {
  int k;
  double expected;
  double rayleigh_cos;
  double rayleigh_sin;  // equals 0 for k = 0
  double rel_error;     // absolute error for k = 0
};

struct EigenReport {
  FracOrder s;
  int resolution;
  double tolerance;
  std::vector<EigenEntry> entries;
  /// Discrete eigenvalues below k_max^{2s} + half the gap to (k_max+1)^{2s},
  /// counted with multiplicity, and the count 2 k_max + 1 the continuum predicts.
  int eigenvalues_below_gap;
  int expected_below_gap;
  int worst_k;
  double worst_error;
  bool passed;

  /// Throws ConvergenceError naming the worst offender unless passed.
  void require_passed() const;
};

/// Rayleigh quotients of the quadrature operator on cos(kx), sin(kx), k = 0..k_max,
/// compared with k^{2s}, plus an eigenvalue count below the spectral gap.
EigenReport eigen_verify(FracOrder s, int k_max, int resolution, double tolerance = 1e-3);

/// ∫ u 𝓛u / ∫ u² with the quadrature operator on the operator's grid.
double rayleigh_quotient_quadrature(const SpectralField& u, const QuadratureOperator& op);

struct RayleighMin {
  double value;
  SpectralField minimizer;
};

/// Minimum of ∥u∥²/∫u² over fields whose modes below k vanish; equals k^{2s}+1,
/// attained at cos(kx).
RayleighMin rayleigh_min_Fk(FracOrder s, int k, int n_modes = 128);

}  // namespace fraclap
