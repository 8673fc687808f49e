#include "fraclap/errors.hpp"
#include "fraclap/nonlinearity.hpp"
#include "fraclap/variational.hpp"
#include "fraclap/xspace.hpp"

#include <doctest.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <numbers>

using namespace fraclap;

namespace {

constexpr double kPi = std::numbers::pi;

// ∫_0^{2π} |1 + eps cos x|^q dx by adaptive Gauss-Kronrod.
double lq_of_test_profile(double eps, double q) {
  struct Params {
    double eps, q;
  } par{eps, q};
  gsl_function fn;
  fn.function = [](double x, void* p) {
    const auto* pp = static_cast<Params*>(p);
    return std::pow(std::abs(1.0 + pp->eps * std::cos(x)), pp->q);
  };
  fn.params = &par;
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(200);
  double result = 0.0, err = 0.0;
  gsl_integration_qag(&fn, 0.0, 2 * kPi, 1e-14, 1e-13, 200, GSL_INTEG_GAUSS61, w, &result, &err);
  gsl_integration_workspace_free(w);
  return result;
}

}  // namespace

TEST_SUITE("variational") {
  TEST_CASE("energy of constants") {
    const FracOrder s(0.5);
    const double c = 0.7, p = 3.0, lambda = -2.0;
    const SpectralField u = SpectralField::constant(8, c);
    const double expected = 0.5 * 2 * kPi * c * c - 0.5 * (lambda + 1.0) * 2 * kPi * c * c - 2 * kPi * std::pow(c, p + 1) / (p + 1);
    CHECK(eval_J(u, s, p, lambda) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(eval_Jtilde(u, s, lambda) == doctest::Approx(-lambda * kPi * c * c).epsilon(1e-13));
    CHECK(jtilde_constant(3.0, -10.0) == doctest::Approx(10 * kPi / std::sqrt(2 * kPi)).epsilon(1e-14));
  }

  TEST_CASE("directional derivative matches finite differences") {
    const FracOrder s(0.45);
    SpectralField u = SpectralField::constant(8, 0.3) + SpectralField::cosine(8, 2, 0.4) + SpectralField::sine(8, 5, 0.2);
    SpectralField phi = SpectralField::cosine(8, 1, 0.5) + SpectralField::sine(8, 3, -0.3);
    const Nonlinearity f = power_odd(2.2);
    const double h = 1e-5;
    const double fd = (eval_J(u + h * phi, s, 0.4, f) - eval_J(u - h * phi, s, 0.4, f)) / (2 * h);
    CHECK(directional_derivative_J(u, phi, s, 0.4, f) == doctest::Approx(fd).epsilon(1e-8));
  }

  TEST_CASE("constant solutions have zero residual") {
    const FracOrder s(0.5);
    const SpectralField c = SpectralField::constant(16, std::sqrt(2.0));
    CHECK(equation_residual(c, s, -2.0, power_odd(3.0)) < 1e-13);
    CHECK(weak_form_defect(c, s, -2.0, power_odd(3.0)) < 1e-12);
    CHECK(equation_residual(c, s, -1.0, power_odd(3.0)) > 0.1);
  }

  TEST_CASE("certificate threshold agrees with the closed form") {
    const double p = 3.0, eps = 0.3;
    const SpectralField u0 = certificate_test_field(p, eps);
    CHECK(integral_abs_pow(u0, p + 1) == doctest::Approx(1.0).epsilon(1e-12));
    // u0 = α(1 + ε cos x): B(u0) = π α² ε², ∫u0² = α²(2π + π ε²).
    const double alpha = std::pow(lq_of_test_profile(eps, p + 1), -1.0 / (p + 1));
    const double B = kPi * alpha * alpha * eps * eps;
    const double l2 = alpha * alpha * (2 * kPi + kPi * eps * eps);
    const double lambda0 = B / (std::pow(2 * kPi, (p - 1) / (p + 1)) - l2);
    for (double s : {0.3, 0.5, 0.8}) CHECK(lambda0_estimate(FracOrder(s), p) == doctest::Approx(lambda0).epsilon(2e-3));
    CHECK(nonconstancy_certificate(u0, FracOrder(0.5), p, -1.1 * lambda0));
    CHECK_FALSE(nonconstancy_certificate(u0, FracOrder(0.5), p, -0.9 * lambda0));
  }

  TEST_CASE("minimizer: constant for small |λ|, nonconstant for large |λ|") {
    const FracOrder s(0.5);
    const MinimizeResult flat = minimize_on_manifold(s, 3.0, -0.01);
    CHECK_FALSE(flat.nonconstant_certified);
    CHECK(flat.residual < 1e-8);
    CHECK(flat.v.a(1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    const MinimizeResult spike = minimize_on_manifold(s, 3.0, -10.0);
    CHECK(spike.nonconstant_certified);
    CHECK(spike.residual < 1e-6);
    CHECK(spike.jtilde < spike.jtilde_constant);
    CHECK(to_grid(spike.v, 4096).min() > 0.0);
    CHECK(integral_abs_pow(spike.v, 4.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(minimize_on_manifold(s, 3.0, 0.5), PreconditionError);
    CHECK_THROWS_AS(minimize_on_manifold(FracOrder(0.25), 3.0, -1.0), PreconditionError);
  }

  TEST_CASE("linking geometry and sign-changing solution") {
    LinkingOptions lo;
    lo.n_sphere = 100;
    lo.n_subspace = 30;
    lo.n_large = 30;
    const LinkingReport rep = linking_geometry_check(FracOrder(0.5), 3.0, 0.5, lo);
    CHECK(rep.passed());
    CHECK(rep.beta > 0.0);
    CHECK(rep.min_J_sphere >= rep.beta);
    const SignChangingResult sc = solve_sign_changing(FracOrder(0.5), 3.0, 0.5);
    CHECK(sc.residual < 1e-8);
    CHECK(sc.min * sc.max < 0.0);
    CHECK_THROWS_AS(newton_from_seed(SpectralField::constant(8, 1.0), FracOrder(0.5), 3.0, 0.5), PreconditionError);
    CHECK_THROWS_AS(solve_sign_changing(FracOrder(0.5), 3.0, 1.0), PreconditionError);
  }
}
