#pragma once

#include "fraclap/field.hpp"
#include "fraclap/frac_order.hpp"
#include "fraclap/nonlinearity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fraclap {

/// J(u) = ½∥u∥² - (λ+1)/2 ∫u² - ∫F(u), F the primitive of f.
double eval_J(const SpectralField& u, FracOrder s, double lambda, const Nonlinearity& f);
/// eval_J with f(t) = |t|^{p-1} t. Requires a subcritical p.
double eval_J(const SpectralField& u, FracOrder s, double p, double lambda);
/// J̃(u) = ½∥u∥² - (λ+1)/2 ∫u².
double eval_Jtilde(const SpectralField& u, FracOrder s, double lambda);
/// dJ(u)[φ] = ⟨u,φ⟩ - (λ+1)∫uφ - ∫f(u)φ.
double directional_derivative_J(const SpectralField& u, const SpectralField& phi, FracOrder s, double lambda,
                                const Nonlinearity& f);

/// Sup over a fine grid of |𝓛u - λu - f(u)| with 𝓛 applied spectrally.
double equation_residual(const SpectralField& u, FracOrder s, double lambda, const Nonlinearity& f);

/// Max over n_tests seeded random test fields φ of
/// |⟨u,φ⟩ - ∫uφ - λ∫uφ - ∫f(u)φ| / ∥φ∥_X.
double weak_form_defect(const SpectralField& u, FracOrder s, double lambda, const Nonlinearity& f, int n_tests = 20,
                        std::uint64_t seed = 1);

/// J̃ of the constant (2π)^{-1/(p+1)} on M, equal to -λπ (2π)^{-2/(p+1)}.
double jtilde_constant(double p, double lambda);

struct MinimizeOptions {
  int n_modes = 1024;
  /// X norm of the projected gradient at which descent stops.
  double tol = 1e-8;
  int max_iter = 20000;
  /// Starting field 1 + init_eps cos(x) before taking |·| and normalizing.
  double init_eps = 0.3;
  /// Newton refinement of the Euler-Lagrange equation after descent.
  bool polish = true;
};

struct MinimizeResult {
  /// Minimizer on M = {∫|v|^{p+1} = 1}.
  SpectralField v;
  double mu;
  /// u = μ^{1/(p-1)} v.
  SpectralField u;
  /// equation_residual of u.
  double residual;
  bool nonconstant_certified;
  double jtilde;
  double jtilde_constant;
  int iterations;
  double gradient_norm;
  /// Largest |∫|v|^{p+1} - 1| seen over all iterates.
  double max_constraint_drift;
  /// Some iterate had X norm above 1e6.
  bool iterate_blowup;
  /// X norm of the projected gradient per iteration.
  std::vector<double> history;
};

/// Projected gradient descent of J̃ on M in the X metric with Armijo
/// backtracking and renormalization after each step.
/// Requires λ < 0 and a subcritical p; throws ConvergenceError when the
/// gradient does not reach tol or the multiplier is not positive.
MinimizeResult minimize_on_manifold(FracOrder s, double p, double lambda, const MinimizeOptions& opts = {});

/// True iff -(1/λ) B(u0) + ∫u0² < (2π)^{(p-1)/(p+1)} - 1e-12, where B is the
/// kernel part of the norm. Requires λ < 0 and |∫|u0|^{p+1} - 1| <= 1e-8.
bool nonconstancy_certificate(const SpectralField& u0, FracOrder s, double p, double lambda);

/// 1 + eps cos(x) normalized onto M.
SpectralField certificate_test_field(double p, double eps = 0.3, int n_modes = 16);

/// Smallest |λ| (to within tol, from above) at which the certificate holds for
/// certificate_test_field(p, eps).
double lambda0_estimate(FracOrder s, double p, double eps = 0.3, double tol = 1e-3);

struct LinkingOptions {
  int n_sphere = 500;
  int n_subspace = 100;
  int n_large = 100;
  /// Modes available to sampled fields and to the embedding-constant search.
  int n_modes = 24;
  /// Highest mode of the finite-dimensional space used for the large sphere.
  int large_space_modes = 3;
  /// Factor applied to numerically estimated extremal constants.
  double safety = 1.5;
  int restarts = 12;
  std::uint64_t seed = 1;
  /// Radius of the small sphere; 0 selects the maximizer of β(r).
  double r = 0.0;
};

struct LinkingReport {
  int k;
  /// (k^{2s} - λ) / (2(k^{2s}+1)).
  double quadratic_coeff;
  /// C with ∫|u|^{p+1}/(p+1) <= C ∥u∥^{p+1} on F_k (estimate times safety).
  double embedding_constant;
  double r;
  double beta;
  double min_J_sphere;
  double max_J_subspace;
  /// c with ∫|u|^{p+1}/(p+1) >= c ∥u∥^{p+1} on the large-sphere space (estimate / safety).
  double lower_constant;
  double R;
  double max_J_large;
  int sphere_violations;
  int subspace_violations;
  int large_violations;

  bool passed() const noexcept { return sphere_violations == 0 && subspace_violations == 0 && large_violations == 0; }
};

/// Sampling audit of the linking geometry for f(t) = |t|^{p-1} t and
/// (k-1)^{2s} <= λ < k^{2s}: J >= β on the sphere ∥u∥ = r in F_k (modes >= k),
/// J <= 0 on E_k (modes < k), and J < 0 on the sphere of radius R in the span
/// of modes up to large_space_modes. The embedding constants are numerical
/// surrogates from gradient ascent/descent with restarts, not rigorous bounds.
LinkingReport linking_geometry_check(FracOrder s, double p, double lambda, const LinkingOptions& opts = {});

struct SignChangingOptions {
  int n_modes = 64;
  double tol = 1e-12;
  int max_iter = 30;
};

struct SignChangingResult {
  SpectralField u;
  int k;
  double residual;
  double min;
  double max;
  double J;
};

/// Nonconstant solution of 𝓛u = λu + |u|^{p-1}u for λ > 0, λ ∉ {k^{2s}}: the
/// unscaled mode-k branch with k the smallest index with k^{2s} > λ is followed
/// until its parameter passes λ, and the nearest point seeds Newton at λ.
SignChangingResult solve_sign_changing(FracOrder s, double p, double lambda, const SignChangingOptions& opts = {});

/// Rejects a seed that is zero or constant, then runs Newton at fixed λ in the
/// cosine subspace.
SpectralField newton_from_seed(const SpectralField& seed, FracOrder s, double p, double lambda,
                               const SignChangingOptions& opts = {});

}  // namespace fraclap
