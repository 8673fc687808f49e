#pragma once

#include "fraclap/field.hpp"
#include "fraclap/frac_order.hpp"
#include "fraclap/galerkin.hpp"
#include "fraclap/nonlinearity.hpp"
#include "fraclap/operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fraclap {

struct BifurcationPoint {
  int k;
  double lambda;
};

/// λ*_k = k^{2s}/(1+k^{2s}) for k = 1..k_max.
std::vector<BifurcationPoint> bifurcation_points(FracOrder s, int k_max);

/// Parameter value where the mode-k branch leaves the trivial solution.
double bifurcation_value(FracOrder s, int k, Formulation form);

struct BranchPoint {
  double lambda;
  SpectralField field;
  /// Sup norm of the field.
  double amplitude;
  /// 1 - λ in the normal formulation, 1 in the unscaled one.
  double mu;
  /// 2π μ^{-1/(2s)}.
  double minimal_period;
  /// Sup of the pointwise residual on a fine grid.
  double residual;
};

struct Branch {
  int k;
  FracOrder s;
  Formulation formulation;
  std::vector<BranchPoint> points;
  /// Every point lies in the cosine subspace with a_k > 0.
  bool symmetric;
  /// Indices i such that the λ-component of the tangent changes sign between points i-1 and i.
  std::vector<int> folds;
  std::string stop_reason;
};

struct ContinuationOptions {
  int n_modes = 128;
  Formulation formulation = Formulation::kNormal;
  /// Replace f by its linear continuation outside [-1, 1].
  bool truncate = true;
  double epsilon = 1e-3;
  double ds_initial = 2e-3;
  double ds_min = 1e-4;
  double ds_max = 5e-2;
  int max_points = 400;
  double max_amplitude = 0.3;
  /// Stop after λ crosses this value.
  std::optional<double> lambda_stop;
  double newton_tol = 1e-12;
  int newton_max_iter = 12;
  double residual_tol = 1e-8;
};

/// Pseudo-arclength continuation of the mode-k branch of the even problem,
/// started at amplitude ε from the bifurcation point. Each point is Newton
/// corrected; a failed corrector halves the step, and falling below ds_min
/// raises ConvergenceError. Requires f'(0) = 0 and k >= 1.
Branch continue_branch(FracOrder s, const Nonlinearity& f, int k, const ContinuationOptions& opts = {});

/// The branch point as a T-periodic function with T = 2π μ^{-1/(2s)}.
/// Requires μ > 0.
PeriodicProfile rescale_to_global(const BranchPoint& point, FracOrder s);

/// PeriodicProfile plus the residual of (-Δ)^s u = λu + f(u) for that profile.
struct GlobalSolution {
  PeriodicProfile profile;
  PeriodicResidual residual;
};

/// rescale_to_global followed by the periodized quadrature residual at n_check points.
GlobalSolution rescale_and_check(const BranchPoint& point, FracOrder s, const Nonlinearity& f, int n_check = 32);

/// Smallest period of a sampled T-periodic function: the first interior local
/// maximum of the circular autocorrelation with value >= 0.9, refined by a
/// parabola; T when there is none.
double empirical_minimal_period(const PeriodicProfile& u, int n_samples = 5040);

/// Newton solve of the unscaled problem at fixed Λ starting from a.
/// Returns the converged cosine coefficients or throws ConvergenceError.
Eigen::VectorXd newton_fixed_parameter(const CosineSystem& sys, Eigen::VectorXd a, double lambda, double tol,
                                       int max_iter);

}  // namespace fraclap
