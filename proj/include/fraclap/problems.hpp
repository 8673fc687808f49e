#pragma once

#include "fraclap/continuation.hpp"
#include "fraclap/field.hpp"
#include "fraclap/frac_order.hpp"
#include "fraclap/nonlinearity.hpp"
#include "fraclap/operator.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fraclap {

enum class Family {
  /// (-Δ)^s u = u + |u|^p
  kEvenPower,
  /// (-Δ)^s u = u + |u|^{p-1} u
  kOddPlus,
  /// (-Δ)^s u = -u + |u|^{p-1} u
  kOddMinus,
  /// (-Δ)^s u = -u + u²
  kQuadraticShifted,
  /// (-Δ)^s u = -u + u², checked through u_x - 2 u u_x + (-Δ)^s u_x = 0
  kBenjaminOnoStationary,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// One instance of (-Δ)^s u = λu + f(u).
struct ProblemSpec {
  FracOrder s;
  Family family;
  double p;
  double lambda;
  Nonlinearity f;

  double rhs(double u) const { return lambda * u + f.value(u); }
};

/// Builds the catalog entry. The power families require p > 1 and
/// p < (1+2s)/(1-2s) when s < 1/2; the quadratic ones fix p = 2 and need s > 1/6.
ProblemSpec make_problem(Family family, FracOrder s, double p = 2.0);

struct GlobalResidualReport {
  double sup;
  double richardson_gap;
  /// False when the n/2 and n operator values differ by more than the tolerance.
  bool resolution_ok;
};

/// Periodized-quadrature residual of the problem's equation for a T-periodic u
/// at n_check off-grid points.
GlobalResidualReport global_residual(const PeriodicProfile& u, const ProblemSpec& spec, int n_check = 32,
                                     int n_pts = 0, double richardson_tol = 1e-6);

/// (-Δ)^s of a T-periodic profile, applied to its Fourier coefficients.
PeriodicProfile fractional_laplacian(const PeriodicProfile& u, FracOrder s);

/// Sup on a fine grid of |u_x - 2 u u_x + (-Δ)^s u_x| with spectral derivatives.
double benjamin_ono_residual(const PeriodicProfile& u, FracOrder s);

struct ScaledPairOptions {
  int n_modes = 128;
  /// Target sup amplitude of the returned solutions.
  double target_amplitude = 0.05;
  /// Admissible relative deviation of the period from 2π.
  double period_tolerance = 0.05;
};

struct SolutionPair {
  std::array<PeriodicProfile, 2> u;
  /// Parameter of the branch point used.
  double lambda;
  double period;
  double amplitude;
  std::array<double, 2> residual;
  double min_value;
};

/// Two small-amplitude solutions near period 2π of the even-power (|u|^p) or
/// odd-plus (|u|^{p-1}u) family. The normal-form k = 1 branch of
/// (-Δ)^s v = λv + f(v) gives v(x) on period 2π μ^{-1/(2s)}; the scaling
/// u(x) = λ^{-1/(p-1)} v(λ^{-1/(2s)} x) turns it into a solution of
/// (-Δ)^s u = u + f(u) with period 2π (λ/μ)^{1/(2s)}. The second solution is the
/// half-period translate.
SolutionPair solve_scaled_pair(Family family, FracOrder s, double p, const ScaledPairOptions& opts = {});

/// solve_scaled_pair for the even-power family.
SolutionPair solve_even_power_pair(FracOrder s, double p, const ScaledPairOptions& opts = {});

struct AmplitudeRow {
  double lambda;
  /// Sup amplitude interpolated along the branch; empty if the branch does not reach λ.
  std::optional<double> amplitude;
};

/// Sup amplitude along the k = 1 normal-form branch for f = |u|^p at each λ.
std::vector<AmplitudeRow> amplitude_scan(FracOrder s, double p, const std::vector<double>& lambda_grid);

/// Positive T-periodic solution of (-Δ)^s w = -w + |w|^{p-1} w: the constrained
/// minimizer U of 𝓛U = ΛU + |U|^{p-1}U on 2π with Λ = -(T/2π)^{2s} is mapped to
/// w(x) = (-Λ)^{-1/(p-1)} U(2πx/T).
PeriodicProfile large_period_wave(FracOrder s, double p, double period, int n_modes = 1024);

/// Fractional Laplacian of a function on the real line by principal-value
/// quadrature: a symmetric second-difference integral on (0, δ), adaptive
/// Gauss-Kronrod on the rest of [-L, L], and the exterior |y| > L in closed
/// form for the f(x) part and by the substitution t = L/|y| for the f(y) part.
double line_fractional_laplacian(const std::function<double(double)>& f, double x, FracOrder s, double L = 40.0,
                                 double delta = 1.0);

struct SolitonReport {
  /// Sup of |(-Δ)^{1/2}Q + Q - Q²| over the sampled points of [-10, 10].
  double sup_residual;
  std::vector<double> points;
  /// |(-Δ)^{1/2}Q(x) - 2(1-x²)/(1+x²)²| at x = 0, 1, 2.
  std::array<double, 3> pointwise_error;
};

/// Q(x) = 2/(1+x²).
double soliton(double x);
SolitonReport soliton_identity_check(int n_points = 201, double L = 40.0);

struct SuiteItem {
  std::string name;
  double period;
  double mean;
  /// (max - min)/2 on one period.
  double oscillation;
  double peak;
  double residual;
  double bo_residual;
  bool passed;
  std::string detail;
  PeriodicProfile profile;
};

struct BenjaminOnoReport {
  FracOrder s;
  std::vector<SuiteItem> items;
  std::optional<SolitonReport> soliton;
  /// Peaks of the positive waves at periods 8π, 16π, 32π.
  std::vector<std::pair<double, double>> peaks_by_period;
  bool passed;
};

/// The constant 1, a 2π-periodic solution near 1 and positive large-period
/// waves of (-Δ)^s u = -u + u², each checked by global_residual and by the
/// stationary Benjamin-Ono residual; at s = 1/2 also the soliton identity.
/// Requires s > 1/6.
BenjaminOnoReport benjamin_ono_suite(FracOrder s);

struct ExampleSolution {
  std::string name;
  PeriodicProfile profile;
  double amplitude;
  double residual;
};

struct ExampleReport {
  Family family;
  FracOrder s;
  double p;
  std::vector<ExampleSolution> solutions;
  std::optional<BenjaminOnoReport> bo;
  bool passed;
};

/// Computes the catalog solutions of one family (the Benjamin-Ono suite for
/// the quadratic families).
ExampleReport run_example(Family family, FracOrder s, double p);

}  // namespace fraclap
