#pragma once

#include "fraclap/field.hpp"
#include "fraclap/frac_order.hpp"
#include "fraclap/kernel.hpp"

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fraclap {

/// The operator as the Fourier multiplier j^{2s}.
class SpectralOperator {
 public:
  SpectralOperator(FracOrder s, int n_modes);

  FracOrder order() const noexcept { return s_; }
  int n_modes() const noexcept { return static_cast<int>(multipliers_.size()) - 1; }
  std::span<const double> multipliers() const noexcept { return multipliers_; }

  SpectralField apply(const SpectralField& u) const;

 private:
  FracOrder s_;
  std::vector<double> multipliers_;
};

SpectralField apply_spectral(const SpectralOperator& op, const SpectralField& u);

/// Principal-value quadrature of c_1 ∫ (u(x) - u(y)) H_T(x - y) dy on n uniform
/// nodes of [0, T). The punctured trapezoid sum over the nonzero offsets is
/// completed by the singular-node correction
///   c_1 sum_{k<K} 2 ζ(2s-1-2k) h^{2-2s+2k} u^{(2k+2)}(x) / (2k+2)!,
/// with the even derivatives taken from a centered seven-point stencil.
class QuadratureOperator {
 public:
  static constexpr int kStencilHalfWidth = 3;
  static constexpr int kMaxCorrectionTerms = 3;

  /// Requires n_pts a power of two >= 16 and 0 <= correction_terms <= 3.
  QuadratureOperator(FracOrder s, int n_pts, double period = kTwoPi, int correction_terms = kMaxCorrectionTerms);

  FracOrder order() const noexcept { return table_.s; }
  int n_pts() const noexcept { return table_.n_pts; }
  double period() const noexcept { return table_.period; }
  double spacing() const noexcept { return table_.period / table_.n_pts; }
  const KernelTable& table() const noexcept { return table_; }
  /// Combined stencil of the singular-node correction at offsets -3..3.
  const std::array<double, 7>& correction_stencil() const noexcept { return stencil_; }

  /// Value at node i of the operator applied to samples u_j = u(x_0 + j h).
  double apply_at(std::span<const double> u, int i) const;
  std::vector<double> apply(std::span<const double> u) const;
  GridField apply(const GridField& u) const;

  /// Discrete eigenvalue on the Fourier mode cos(2π m x / T). The matrix of
  /// the operator is circulant and symmetric, so these are all its eigenvalues.
  double symbol(int m) const;

 private:
  KernelTable table_;
  std::vector<double> weights_;
  std::array<double, 7> stencil_{};
};

/// Kernel part of the inner product, π sum_j j^{2s}(a_j a_j' + b_j b_j').
double bilinear_form(const SpectralField& u, const SpectralField& v, FracOrder s);

/// The double integral ½ ∫∫ (u(x)-u(y))(v(x)-v(y)) c_1 H(x-y) dy dx evaluated
/// through its symmetrized form ½ ∫ (v 𝓛u + u 𝓛v) with the quadrature operator.
double bilinear_form_quadrature(const SpectralField& u, const SpectralField& v, const QuadratureOperator& op);
/// bilinear_form_quadrature plus the trapezoid value of ∫ u v.
double inner_product_quadrature(const SpectralField& u, const SpectralField& v, const QuadratureOperator& op);

/// A convex, Lipschitz scalar function with a chosen (sub)derivative.
struct ConvexFunction {
  std::string name;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
};

ConvexFunction convex_identity();
ConvexFunction convex_abs();
/// 0 for t <= 0, t^β on [0, T], continued linearly with slope β T^{β-1}.
ConvexFunction convex_truncated_power(double beta, double cap);
ConvexFunction convex_softplus();
std::vector<ConvexFunction> convex_catalog();

/// Midpoint-convexity probe on [-range, range]; false if any violation exceeds tol.
bool probe_convexity(const ConvexFunction& phi, double range = 20.0, double tol = 1e-12);

struct ConvexityReport {
  std::string function;
  double max_violation;  // max_i 𝓛Φ(u)(x_i) - Φ'(u(x_i)) 𝓛u(x_i)
  int worst_index;
  int n_checked;
};

/// Checks 𝓛Φ(u) <= Φ'(u) 𝓛u at n_samples grid nodes (power of two).
/// Throws PreconditionError if phi fails the convexity probe.
ConvexityReport convexity_inequality_check(const SpectralField& u, const ConvexFunction& phi, FracOrder s, int n_samples);

}  // namespace fraclap

namespace fraclap {

/// Sup over n_check points x_c = T (c + 0.381966)/n_check of
/// |𝓛_T u(x_c) - rhs(u(x_c))|, where 𝓛_T is the quadrature operator of the
/// period-T lattice on n_pts nodes anchored at x_c.
struct PeriodicResidual {
  double sup;
  /// Sup difference between the operator values at n_pts and n_pts/2.
  double richardson_gap;
  int n_check;
  int n_pts;
};

PeriodicResidual periodic_residual(const PeriodicProfile& u, FracOrder s, const std::function<double(double)>& rhs,
                                   int n_check = 32, int n_pts = 0);

}  // namespace fraclap
