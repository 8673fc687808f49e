#pragma once

#include "fraclap/field.hpp"
#include "fraclap/frac_order.hpp"
#include "fraclap/nonlinearity.hpp"

#include <Eigen/Dense>

namespace fraclap {

/// Two parameterizations of the even 2π-periodic problem in the cosine basis.
enum class Formulation {
  /// (1-λ)(𝓛v + v) - v - f(v) = 0; nontrivial branches leave v = 0 at
  /// λ = k^{2s}/(1+k^{2s}).
  kNormal,
  /// 𝓛w - Λw - f(w) = 0 with period fixed at 2π; branches leave at Λ = k^{2s}.
  kUnscaled,
};

/// Galerkin residual of an even field u = a_0/2 + sum a_j cos(jx), with the
/// nonlinear term projected exactly through an alias-free grid.
class CosineSystem {
 public:
  CosineSystem(FracOrder s, Nonlinearity f, int n_modes, Formulation form);

  int n_modes() const noexcept { return n_modes_; }
  int size() const noexcept { return n_modes_ + 1; }
  FracOrder order() const noexcept { return s_; }
  Formulation formulation() const noexcept { return form_; }
  const Nonlinearity& nonlinearity() const noexcept { return f_; }

  Eigen::VectorXd residual(const Eigen::VectorXd& a, double lambda) const;
  /// Derivative of the residual in the coefficients.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& a, double lambda) const;
  /// Derivative of the residual in the parameter.
  Eigen::VectorXd d_lambda(const Eigen::VectorXd& a, double lambda) const;

  SpectralField field(const Eigen::VectorXd& a) const;
  Eigen::VectorXd coefficients(const SpectralField& u) const;

  /// Sup over a fine grid of the pointwise residual of the equation.
  double pointwise_residual(const Eigen::VectorXd& a, double lambda) const;

 private:
  FracOrder s_;
  Nonlinearity f_;
  int n_modes_;
  int n_quad_;
  Formulation form_;
  Eigen::VectorXd symbol_;
};

/// Cosine coefficients of f(u) on an n_pts grid, truncated to n_modes.
SpectralField project_nonlinearity(const SpectralField& u, const Nonlinearity& f, int n_pts, int n_modes);

}  // namespace fraclap
