#include "fraclap/variational.hpp"

#include "fraclap/continuation.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/exponents.hpp"
#include "fraclap/galerkin.hpp"
#include "fraclap/linear.hpp"
#include "fraclap/xspace.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fraclap {
namespace {

constexpr const char* kModule = "variational";

void require_subcritical(FracOrder s, double p) {
  if (!is_subcritical(s, p)) {
    std::ostringstream os;
    os << "growth exponent must satisfy p < (1+2s)/(1-2s) = " << growth_exponent_bound(s) << " for s = " << s.value();
    throw PreconditionError(kModule, os.str());
  }
}

double grid_integral(const SpectralField& u, int n_pts, const std::function<double(double)>& g) {
  const GridField gu = to_grid(u, n_pts);
  double sum = 0.0;
  for (double v : gu.values()) sum += g(v);
  return sum * gu.spacing();
}

double grid_product_integral(const SpectralField& u, const SpectralField& phi, int n_pts,
                             const std::function<double(double)>& g) {
  const GridField gu = to_grid(u, n_pts);
  const GridField gp = to_grid(phi, n_pts);
  double sum = 0.0;
  for (int i = 0; i < n_pts; ++i) sum += g(gu[i]) * gp[i];
  return sum * gu.spacing();
}

double lp_integral(const SpectralField& v, double p) { return integral_abs_pow(v, p + 1.0); }

SpectralField normalize_on_manifold(const SpectralField& v, double p) {
  const double norm = std::pow(lp_integral(v, p), 1.0 / (p + 1.0));
  if (!(norm > 0.0)) throw ConvergenceError(kModule, "iterate collapsed to zero");
  return (1.0 / norm) * v;
}

// Random field with independent normal coefficients on modes lo..hi, decaying like 1/j.
SpectralField random_field(int n_modes, int lo, int hi, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField u(n_modes);
  for (int j = lo; j <= hi; ++j) {
    const double w = 1.0 / std::max(1, j);
    u.a(j) = w * normal(rng);
    if (j > 0) u.b(j) = w * normal(rng);
  }
  return u;
}

// Extremal value of ∫|u|^{p+1} on the unit X sphere of the span of modes lo..hi,
// by projected gradient steps in the X metric with restarts.
double extremal_lp_ratio(FracOrder s, double p, int n_modes, int lo, int hi, bool maximize, int restarts,
                         std::mt19937_64& rng) {
  const ResolventK K(s, n_modes);
  const int n_q = quadrature_points(n_modes);
  const Nonlinearity f = power_odd(p);
  auto restrict_modes = [&](SpectralField w) {
    for (int j = 0; j <= n_modes; ++j)
      if (j < lo || j > hi) {
        w.a(j) = 0.0;
        if (j > 0) w.b(j) = 0.0;
      }
    return w;
  };
  auto unit = [&](const SpectralField& w) { return (1.0 / norm_X(w, s)) * w; };
  const double sign = maximize ? 1.0 : -1.0;
  double best = maximize ? 0.0 : std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    SpectralField u = unit(random_field(n_modes, lo, hi, rng));
    double value = lp_integral(u, p);
    double step = 0.5;
    for (int it = 0; it < 400 && step > 1e-10; ++it) {
      SpectralField g = restrict_modes(K.apply(project_nonlinearity(u, f, n_q, n_modes)));
      g *= (p + 1.0);
      g -= inner_product_X(g, u, s) * u;
      if (norm_X(g, s) < 1e-12) break;
      const SpectralField trial = unit(u + (sign * step) * g);
      const double tv = lp_integral(trial, p);
      if (sign * (tv - value) > 0.0) {
        u = trial;
        value = tv;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    best = maximize ? std::max(best, value) : std::min(best, value);
  }
  return best;
}

}  // namespace

double eval_J(const SpectralField& u, FracOrder s, double lambda, const Nonlinearity& f) {
  return eval_Jtilde(u, s, lambda) - grid_integral(u, quadrature_points(u.n_modes()), f.primitive);
}

double eval_J(const SpectralField& u, FracOrder s, double p, double lambda) {
  require_subcritical(s, p);
  return eval_J(u, s, lambda, power_odd(p));
}

double eval_Jtilde(const SpectralField& u, FracOrder s, double lambda) {
  return 0.5 * norm_X_squared(u, s) - 0.5 * (lambda + 1.0) * l2_norm_squared(u);
}

double directional_derivative_J(const SpectralField& u, const SpectralField& phi, FracOrder s, double lambda,
                                const Nonlinearity& f) {
  return inner_product_X(u, phi, s) - (lambda + 1.0) * l2_inner(u, phi) -
         grid_product_integral(u, phi, quadrature_points(u.n_modes()), f.value);
}

double equation_residual(const SpectralField& u, FracOrder s, double lambda, const Nonlinearity& f) {
  const SpectralField lu = SpectralOperator(s, u.n_modes()).apply(u);
  const int n = 2 * quadrature_points(u.n_modes());
  const GridField gu = to_grid(u, n);
  const GridField gl = to_grid(lu, n);
  double sup = 0.0;
  for (int i = 0; i < n; ++i) sup = std::max(sup, std::abs(gl[i] - lambda * gu[i] - f.value(gu[i])));
  return sup;
}

double weak_form_defect(const SpectralField& u, FracOrder s, double lambda, const Nonlinearity& f, int n_tests,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n_q = quadrature_points(u.n_modes());
  double worst = 0.0;
  for (int t = 0; t < n_tests; ++t) {
    const SpectralField phi = random_field(u.n_modes(), 0, std::min(u.n_modes(), 16), rng);
    const double lhs = inner_product_X(u, phi, s) - l2_inner(u, phi);
    const double rhs = lambda * l2_inner(u, phi) + grid_product_integral(u, phi, n_q, f.value);
    worst = std::max(worst, std::abs(lhs - rhs) / norm_X(phi, s));
  }
  return worst;
}

double jtilde_constant(double p, double lambda) {
  return -lambda * std::numbers::pi * std::pow(kTwoPi, -2.0 / (p + 1.0));
}

MinimizeResult minimize_on_manifold(FracOrder s, double p, double lambda, const MinimizeOptions& opts) {
  if (!(lambda < 0.0)) throw PreconditionError(kModule, "constrained minimization requires λ < 0");
  require_subcritical(s, p);
  if (opts.n_modes < 1) throw PreconditionError(kModule, "n_modes must be positive");

  const int n = opts.n_modes;
  const int n_q = quadrature_points(n);
  const ResolventK K(s, n);
  const Nonlinearity f = power_odd(p);

  SpectralField start = SpectralField::constant(n, 1.0) + SpectralField::cosine(n, 1, opts.init_eps);
  start = map_pointwise(start, n_q, n, [](double t) { return std::abs(t); });
  SpectralField v = normalize_on_manifold(start, p);

  MinimizeResult res{v, 0.0, v, 0.0, false, 0.0, jtilde_constant(p, lambda), 0, 0.0, 0.0, false, {}};
  double jt = eval_Jtilde(v, s, lambda);
  double step = 1.0;
  bool converged = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    SpectralField g = v - (lambda + 1.0) * K.apply(v);
    SpectralField nvec = (p + 1.0) * K.apply(project_nonlinearity(v, f, n_q, n));
    g -= (inner_product_X(g, nvec, s) / inner_product_X(nvec, nvec, s)) * nvec;
    const double gn2 = norm_X_squared(g, s);
    res.gradient_norm = std::sqrt(gn2);
    res.history.push_back(res.gradient_norm);
    res.iterations = it;
    if (res.gradient_norm <= opts.tol) {
      converged = true;
      break;
    }
    // Once the predicted decrease is below the round-off of J̃ the Armijo test
    // carries no information; the last accepted step is then reused.
    const bool resolvable = step * gn2 > 1e-11 * std::abs(jt);
    if (resolvable) {
      step = std::min(2.0 * step, 10.0);
      for (;;) {
        const SpectralField trial = normalize_on_manifold(v - step * g, p);
        const double jt_trial = eval_Jtilde(trial, s, lambda);
        if (jt_trial <= jt - 1e-4 * step * gn2 || step < 1e-12) {
          v = trial;
          jt = jt_trial;
          break;
        }
        step *= 0.5;
      }
    } else {
      v = normalize_on_manifold(v - step * g, p);
      jt = eval_Jtilde(v, s, lambda);
    }
    res.max_constraint_drift = std::max(res.max_constraint_drift, std::abs(lp_integral(v, p) - 1.0));
    if (norm_X(v, s) > 1e6) res.iterate_blowup = true;
  }
  if (!converged && !opts.polish)
    throw ConvergenceError(kModule, "projected gradient did not reach tolerance within max_iter");

  // J̃ is even, so -v is a minimizer as well; return the nonnegative one.
  {
    const GridField gv = to_grid(v, n_q);
    if (-gv.min() > gv.max()) v = -v;
  }
  double mu = norm_X_squared(v, s) - (lambda + 1.0) * l2_norm_squared(v);
  if (!(mu > 0.0)) throw ConvergenceError(kModule, "Lagrange multiplier is not positive");
  SpectralField u = std::pow(mu, 1.0 / (p - 1.0)) * v;

  if (opts.polish && v.is_even(1e-14)) {
    const CosineSystem sys(s, f, n, Formulation::kUnscaled);
    const Eigen::VectorXd a = newton_fixed_parameter(sys, sys.coefficients(u), lambda, 1e-14, 50);
    u = sys.field(a);
    v = normalize_on_manifold(u, p);
    mu = norm_X_squared(v, s) - (lambda + 1.0) * l2_norm_squared(v);
    if (!(mu > 0.0)) throw ConvergenceError(kModule, "Lagrange multiplier is not positive");
    u = std::pow(mu, 1.0 / (p - 1.0)) * v;
  } else if (!converged) {
    throw ConvergenceError(kModule, "projected gradient did not reach tolerance within max_iter");
  }

  res.v = v;
  res.mu = mu;
  res.u = u;
  res.residual = equation_residual(u, s, lambda, f);
  res.jtilde = eval_Jtilde(v, s, lambda);
  res.nonconstant_certified = nonconstancy_certificate(v, s, p, lambda);
  return res;
}

bool nonconstancy_certificate(const SpectralField& u0, FracOrder s, double p, double lambda) {
  if (!(lambda < 0.0)) throw PreconditionError(kModule, "certificate requires λ < 0");
  if (std::abs(lp_integral(u0, p) - 1.0) > 1e-8)
    throw PreconditionError(kModule, "certificate field must satisfy ∫|u0|^{p+1} = 1");
  const double lhs = -gagliardo_part(u0, s) / lambda + l2_norm_squared(u0);
  return lhs < std::pow(kTwoPi, (p - 1.0) / (p + 1.0)) - 1e-12;
}

SpectralField certificate_test_field(double p, double eps, int n_modes) {
  const SpectralField base = SpectralField::constant(n_modes, 1.0) + SpectralField::cosine(n_modes, 1, eps);
  return normalize_on_manifold(base, p);
}

double lambda0_estimate(FracOrder s, double p, double eps, double tol) {
  require_subcritical(s, p);
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError(kModule, "test-field perturbation must lie in (0, 1)");
  const SpectralField u0 = certificate_test_field(p, eps);
  double lo = 0.0, hi = 1.0;
  while (!nonconstancy_certificate(u0, s, p, -hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw ConvergenceError(kModule, "certificate never holds for the test field");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (nonconstancy_certificate(u0, s, p, -mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

LinkingReport linking_geometry_check(FracOrder s, double p, double lambda, const LinkingOptions& opts) {
  require_subcritical(s, p);
  if (!(lambda > 0.0)) throw PreconditionError(kModule, "linking geometry requires λ > 0");
  int k = 1;
  while (std::pow(k, s.two_s()) <= lambda) ++k;
  if (std::abs(std::pow(k - 1, s.two_s()) - lambda) < 1e-12)
    throw PreconditionError(kModule, "λ must not be an eigenvalue k^{2s}");
  if (opts.n_modes < std::max(k, opts.large_space_modes) + 1)
    throw PreconditionError(kModule, "n_modes too small for the requested subspaces");

  std::mt19937_64 rng(opts.seed);
  const int n = opts.n_modes;
  const double mk = std::pow(k, s.two_s());

  LinkingReport rep{};
  rep.k = k;
  rep.quadratic_coeff = (mk - lambda) / (2.0 * (mk + 1.0));
  const double sup_ratio = extremal_lp_ratio(s, p, n, k, n, true, opts.restarts, rng);
  rep.embedding_constant = opts.safety * sup_ratio / (p + 1.0);
  const double r_star =
      std::pow(2.0 * rep.quadratic_coeff / ((p + 1.0) * rep.embedding_constant), 1.0 / (p - 1.0));
  rep.r = opts.r > 0.0 ? opts.r : r_star;
  rep.beta = rep.quadratic_coeff * rep.r * rep.r - rep.embedding_constant * std::pow(rep.r, p + 1.0);
  if (!(rep.beta > 0.0)) throw PreconditionError(kModule, "chosen radius gives a nonpositive β");

  rep.min_J_sphere = std::numeric_limits<double>::infinity();
  for (int i = 0; i < opts.n_sphere; ++i) {
    SpectralField u = random_field(n, k, n, rng);
    u *= rep.r / norm_X(u, s);
    const double j = eval_J(u, s, p, lambda);
    rep.min_J_sphere = std::min(rep.min_J_sphere, j);
    if (!(j >= rep.beta)) ++rep.sphere_violations;
  }

  std::uniform_real_distribution<double> scale(-10.0, 10.0);
  rep.max_J_subspace = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < opts.n_subspace; ++i) {
    SpectralField u = random_field(n, 0, k - 1, rng);
    u *= scale(rng) / std::max(norm_X(u, s), 1e-300);
    const double j = eval_J(u, s, p, lambda);
    rep.max_J_subspace = std::max(rep.max_J_subspace, j);
    if (j > 1e-10) ++rep.subspace_violations;
  }

  const int top = opts.large_space_modes;
  const double inf_ratio = extremal_lp_ratio(s, p, n, 0, top, false, opts.restarts, rng);
  rep.lower_constant = inf_ratio / ((p + 1.0) * opts.safety);
  rep.R = std::max(2.0 * std::pow(1.0 / (2.0 * rep.lower_constant), 1.0 / (p - 1.0)), 2.0 * rep.r);
  rep.max_J_large = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < opts.n_large; ++i) {
    SpectralField u = random_field(n, 0, top, rng);
    u *= rep.R / norm_X(u, s);
    const double j = eval_J(u, s, p, lambda);
    rep.max_J_large = std::max(rep.max_J_large, j);
    if (!(j < 0.0)) ++rep.large_violations;
  }
  return rep;
}

SpectralField newton_from_seed(const SpectralField& seed, FracOrder s, double p, double lambda,
                               const SignChangingOptions& opts) {
  if (gagliardo_part(seed, s) <= 1e-24)
    throw PreconditionError(kModule, "seed is constant; only nonconstant seeds are accepted for λ > 0");
  if (!seed.is_even(1e-12)) throw PreconditionError(kModule, "seed must lie in the cosine subspace");
  const CosineSystem sys(s, power_odd(p), opts.n_modes, Formulation::kUnscaled);
  const Eigen::VectorXd a = newton_fixed_parameter(sys, sys.coefficients(seed), lambda, opts.tol, opts.max_iter);
  return sys.field(a);
}

SignChangingResult solve_sign_changing(FracOrder s, double p, double lambda, const SignChangingOptions& opts) {
  require_subcritical(s, p);
  if (!(lambda > 0.0)) throw PreconditionError(kModule, "sign-changing solve requires λ > 0");
  int k = 1;
  while (std::pow(k, s.two_s()) <= lambda) ++k;
  if (std::abs(std::pow(k - 1, s.two_s()) - lambda) < 1e-12)
    throw PreconditionError(kModule, "λ must not be an eigenvalue k^{2s}");

  ContinuationOptions copts;
  copts.n_modes = opts.n_modes;
  copts.formulation = Formulation::kUnscaled;
  copts.truncate = false;
  copts.max_amplitude = 1e3;
  copts.lambda_stop = lambda;
  const Nonlinearity f = power_odd(p);
  const Branch br = continue_branch(s, f, k, copts);
  if (br.stop_reason != "parameter limit")
    throw ConvergenceError(kModule, "branch did not reach the requested λ (" + br.stop_reason + ")");

  const auto nearest = std::min_element(br.points.begin(), br.points.end(), [&](const auto& x, const auto& y) {
    return std::abs(x.lambda - lambda) < std::abs(y.lambda - lambda);
  });
  SignChangingResult out{newton_from_seed(nearest->field, s, p, lambda, opts), k, 0.0, 0.0, 0.0, 0.0};
  if (gagliardo_part(out.u, s) <= 1e-20) throw ConvergenceError(kModule, "Newton converged to a constant solution");
  out.residual = equation_residual(out.u, s, lambda, f);
  const GridField g = to_grid(out.u, 2 * quadrature_points(opts.n_modes));
  out.min = g.min();
  out.max = g.max();
  out.J = eval_J(out.u, s, p, lambda);
  return out;
}

}  // namespace fraclap
