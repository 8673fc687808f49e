#include "fraclap/continuation.hpp"

#include "fraclap/errors.hpp"
#include "fraclap/xspace.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace fraclap {
namespace {

constexpr const char* kModule = "continuation";

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct State {
  VectorXd a;
  double lambda;
};

VectorXd pack(const State& x) {
  VectorXd v(x.a.size() + 1);
  v << x.a, x.lambda;
  return v;
}

State unpack(const VectorXd& v) { return {v.head(v.size() - 1), v[v.size() - 1]}; }

BranchPoint make_point(const CosineSystem& sys, const State& x) {
  const SpectralField u = sys.field(x.a);
  const GridField g = to_grid(u, 2 * quadrature_points(sys.n_modes()));
  const double amp = std::max(std::abs(g.min()), std::abs(g.max()));
  const double mu = sys.formulation() == Formulation::kNormal ? 1.0 - x.lambda : 1.0;
  const double period = mu > 0.0 ? kTwoPi * std::pow(mu, -1.0 / sys.order().two_s()) : 0.0;
  return {x.lambda, u, amp, mu, period, sys.pointwise_residual(x.a, x.lambda)};
}

// Tangent of the solution curve: null vector of [J | R_λ], oriented along `prev`.
VectorXd tangent(const CosineSystem& sys, const State& x, const VectorXd& prev) {
  const int n = sys.size();
  MatrixXd m(n + 1, n + 1);
  m.topLeftCorner(n, n) = sys.jacobian(x.a, x.lambda);
  m.topRightCorner(n, 1) = sys.d_lambda(x.a, x.lambda);
  m.bottomRows(1) = prev.transpose();
  VectorXd rhs = VectorXd::Zero(n + 1);
  rhs[n] = 1.0;
  VectorXd t = m.partialPivLu().solve(rhs);
  t.normalize();
  if (t.dot(prev) < 0.0) t = -t;
  return t;
}

// Corrector: R(x) = 0 together with t·(x - x_pred) = 0.
std::optional<State> correct(const CosineSystem& sys, const VectorXd& predicted, const VectorXd& t,
                             const ContinuationOptions& opts, int& iterations) {
  const int n = sys.size();
  VectorXd x = predicted;
  for (iterations = 1; iterations <= opts.newton_max_iter; ++iterations) {
    const State st = unpack(x);
    VectorXd f(n + 1);
    f.head(n) = sys.residual(st.a, st.lambda);
    f[n] = t.dot(x - predicted);
    MatrixXd m(n + 1, n + 1);
    m.topLeftCorner(n, n) = sys.jacobian(st.a, st.lambda);
    m.topRightCorner(n, 1) = sys.d_lambda(st.a, st.lambda);
    m.bottomRows(1) = t.transpose();
    const VectorXd dx = m.partialPivLu().solve(-f);
    if (!dx.allFinite()) return std::nullopt;
    x += dx;
    if (dx.norm() <= opts.newton_tol * (1.0 + x.norm())) {
      const State out = unpack(x);
      if (sys.residual(out.a, out.lambda).norm() <= 1e3 * opts.newton_tol) return out;
    }
  }
  return std::nullopt;
}

// First point: a_k = ε held fixed, remaining coefficients and λ solved for.
State first_point(const CosineSystem& sys, int k, double lambda0, const ContinuationOptions& opts) {
  const int n = sys.size();
  State x{VectorXd::Zero(n), lambda0};
  x.a[k] = opts.epsilon;
  for (int it = 0; it < 4 * opts.newton_max_iter; ++it) {
    const VectorXd r = sys.residual(x.a, x.lambda);
    MatrixXd m = sys.jacobian(x.a, x.lambda);
    m.col(k) = sys.d_lambda(x.a, x.lambda);
    const VectorXd d = m.partialPivLu().solve(-r);
    if (!d.allFinite()) break;
    for (int j = 0; j < n; ++j) {
      if (j == k) x.lambda += d[j];
      else x.a[j] += d[j];
    }
    if (d.norm() <= opts.newton_tol * (1.0 + x.a.norm() + std::abs(x.lambda))) return x;
  }
  throw ConvergenceError(kModule, "Newton failed at the first branch point");
}

}  // namespace

std::vector<BifurcationPoint> bifurcation_points(FracOrder s, int k_max) {
  if (k_max < 1) throw PreconditionError(kModule, "k_max must be at least 1");
  std::vector<BifurcationPoint> out;
  for (int k = 1; k <= k_max; ++k) out.push_back({k, bifurcation_value(s, k, Formulation::kNormal)});
  return out;
}

double bifurcation_value(FracOrder s, int k, Formulation form) {
  if (k < 1) throw PreconditionError(kModule, "mode index k must be at least 1");
  const double m = std::pow(k, s.two_s());
  return form == Formulation::kNormal ? m / (1.0 + m) : m;
}

Branch continue_branch(FracOrder s, const Nonlinearity& f, int k, const ContinuationOptions& opts) {
  if (k < 1 || k > opts.n_modes) throw PreconditionError(kModule, "mode index must satisfy 1 <= k <= n_modes");
  if (!(opts.epsilon > 0.0)) throw PreconditionError(kModule, "start amplitude must be positive");
  if (!(opts.ds_min > 0.0 && opts.ds_min <= opts.ds_initial && opts.ds_initial <= opts.ds_max))
    throw PreconditionError(kModule, "step sizes must satisfy 0 < ds_min <= ds_initial <= ds_max");
  if (std::abs(f.derivative(0.0)) > 1e-12) throw PreconditionError(kModule, "branch continuation requires f'(0) = 0");

  const Nonlinearity used = opts.truncate ? truncate_nonlinearity(f).as_nonlinearity() : f;
  const CosineSystem sys(s, used, opts.n_modes, opts.formulation);
  const int n = sys.size();

  Branch br{k, s, opts.formulation, {}, true, {}, ""};
  State x = first_point(sys, k, bifurcation_value(s, k, opts.formulation), opts);
  br.points.push_back(make_point(sys, x));

  VectorXd guide = VectorXd::Zero(n + 1);
  guide[k] = 1.0;
  VectorXd t = tangent(sys, x, guide);
  double ds = opts.ds_initial;
  const double lambda_start = x.lambda;

  while (static_cast<int>(br.points.size()) < opts.max_points) {
    int iterations = 0;
    const VectorXd predicted = pack(x) + ds * t;
    const auto corrected = correct(sys, predicted, t, opts, iterations);
    if (!corrected) {
      ds *= 0.5;
      if (ds < opts.ds_min) throw ConvergenceError(kModule, "corrector failed with the step at its floor");
      continue;
    }
    const VectorXd t_new = tangent(sys, *corrected, t);
    if (t_new[n] * t[n] < 0.0) br.folds.push_back(static_cast<int>(br.points.size()));
    x = *corrected;
    t = t_new;
    const BranchPoint p = make_point(sys, x);
    if (x.a[k] <= 0.0) br.symmetric = false;
    br.points.push_back(p);

    if (iterations <= 3) ds = std::min(1.5 * ds, opts.ds_max);
    else if (iterations > 6) ds = std::max(0.5 * ds, opts.ds_min);

    if (p.amplitude >= opts.max_amplitude) {
      br.stop_reason = "amplitude limit";
      return br;
    }
    if (opts.lambda_stop && (x.lambda - *opts.lambda_stop) * (lambda_start - *opts.lambda_stop) <= 0.0) {
      br.stop_reason = "parameter limit";
      return br;
    }
    if (opts.formulation == Formulation::kNormal && x.lambda >= 1.0) {
      br.stop_reason = "left the region 1 - λ > 0";
      return br;
    }
  }
  br.stop_reason = "point limit";
  return br;
}

PeriodicProfile rescale_to_global(const BranchPoint& point, FracOrder s) {
  if (!(point.mu > 0.0)) throw PreconditionError(kModule, "rescaling requires μ = 1 - λ > 0");
  return {point.field, kTwoPi * std::pow(point.mu, -1.0 / s.two_s())};
}

GlobalSolution rescale_and_check(const BranchPoint& point, FracOrder s, const Nonlinearity& f, int n_check) {
  PeriodicProfile prof = rescale_to_global(point, s);
  // In the normal formulation u(x) = v(μ^{1/(2s)} x) solves (-Δ)^s u = λu + f̃(u);
  // in the unscaled one the parameter multiplies u directly.
  const TruncatedNonlinearity ft = truncate_nonlinearity(f);
  const double lambda = point.lambda;
  auto rhs = [&ft, lambda](double u) { return lambda * u + ft.value(u); };
  PeriodicResidual res = periodic_residual(prof, s, rhs, n_check);
  return {std::move(prof), res};
}

double empirical_minimal_period(const PeriodicProfile& u, int n_samples) {
  if (n_samples < 8) throw PreconditionError(kModule, "autocorrelation needs at least 8 samples");
  std::vector<double> x(static_cast<size_t>(n_samples));
  double mean = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    x[i] = u(u.period * i / n_samples);
    mean += x[i];
  }
  mean /= n_samples;
  double var = 0.0;
  for (double& v : x) {
    v -= mean;
    var += v * v;
  }
  if (var <= 1e-300) return u.period;
  std::vector<double> r(static_cast<size_t>(n_samples));
  for (int m = 0; m < n_samples; ++m) {
    double acc = 0.0;
    for (int i = 0; i < n_samples; ++i) acc += x[i] * x[(i + m) % n_samples];
    r[m] = acc / var;
  }
  for (int m = 1; m < n_samples; ++m) {
    const double left = r[m - 1], mid = r[m], right = r[(m + 1) % n_samples];
    if (mid >= 0.9 && mid >= left && mid >= right) {
      const double curv = left - 2.0 * mid + right;
      const double shift = curv != 0.0 ? 0.5 * (left - right) / curv : 0.0;
      return u.period * (m + shift) / n_samples;
    }
  }
  return u.period;
}

Eigen::VectorXd newton_fixed_parameter(const CosineSystem& sys, Eigen::VectorXd a, double lambda, double tol,
                                       int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const VectorXd r = sys.residual(a, lambda);
    const VectorXd d = sys.jacobian(a, lambda).partialPivLu().solve(-r);
    if (!d.allFinite()) break;
    a += d;
    if (d.norm() <= tol * (1.0 + a.norm())) return a;
  }
  throw ConvergenceError(kModule, "Newton iteration at fixed parameter did not converge");
}

}  // namespace fraclap
