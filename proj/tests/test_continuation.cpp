#include "fraclap/continuation.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/galerkin.hpp"
#include "fraclap/nonlinearity.hpp"

#include <doctest.h>

#include <cmath>

using namespace fraclap;

TEST_SUITE("continuation") {
  TEST_CASE("bifurcation values") {
    const FracOrder s(0.3);
    const auto pts = bifurcation_points(s, 4);
    REQUIRE(pts.size() == 4);
    for (const auto& bp : pts) {
      const double m = std::pow(bp.k, 0.6);
      CHECK(bp.lambda == doctest::Approx(m / (1.0 + m)).epsilon(1e-15));
      CHECK(bifurcation_value(s, bp.k, Formulation::kUnscaled) == doctest::Approx(m));
    }
  }

  TEST_CASE("nonlinearities and truncation") {
    const Nonlinearity f = power_odd(2.5);
    CHECK(f.value(-2.0) == doctest::Approx(-std::pow(2.0, 2.5)));
    CHECK(f.derivative(0.7) == doctest::Approx(2.5 * std::pow(0.7, 1.5)));
    const double h = 1e-6;
    CHECK((f.primitive(0.8 + h) - f.primitive(0.8 - h)) / (2 * h) == doctest::Approx(f.value(0.8)).epsilon(1e-8));
    const TruncatedNonlinearity t = truncate_nonlinearity(monomial(3));
    CHECK(t.value(0.5) == doctest::Approx(0.125));
    CHECK(t.value(3.0) == doctest::Approx(1.0 + 3.0 * 2.0));
    CHECK(t.derivative(-4.0) == doctest::Approx(3.0));
    for (double x : {-50.0, -2.0, -0.3, 0.4, 1.5, 80.0}) CHECK(std::abs(t.value(x)) <= t.lipschitz_bound * std::abs(x) + 1e-12);
    Nonlinearity linear{"t", [](double x) { return x; }, [](double) { return 1.0; }, [](double x) { return 0.5 * x * x; }};
    CHECK_THROWS_AS(truncate_nonlinearity(linear), PreconditionError);
    CHECK(nonlinearity_from_name("even:2.5").value(-1.5) == doctest::Approx(std::pow(1.5, 2.5)));
    CHECK_THROWS_AS(nonlinearity_from_name("cubic"), PreconditionError);
  }

  TEST_CASE("Jacobian matches finite differences of the residual") {
    for (Formulation form : {Formulation::kNormal, Formulation::kUnscaled}) {
      const CosineSystem sys(FracOrder(0.4), monomial(3), 8, form);
      Eigen::VectorXd a = Eigen::VectorXd::Zero(sys.size());
      a(0) = 0.2;
      a(1) = 0.5;
      a(2) = -0.1;
      a(5) = 0.05;
      const double lambda = 0.3;
      const Eigen::MatrixXd J = sys.jacobian(a, lambda);
      const double h = 1e-6;
      for (int k = 0; k < sys.size(); ++k) {
        Eigen::VectorXd ap = a, am = a;
        ap(k) += h;
        am(k) -= h;
        const Eigen::VectorXd col = (sys.residual(ap, lambda) - sys.residual(am, lambda)) / (2 * h);
        CHECK((col - J.col(k)).lpNorm<Eigen::Infinity>() < 1e-8);
      }
      const Eigen::VectorXd dl = (sys.residual(a, lambda + h) - sys.residual(a, lambda - h)) / (2 * h);
      CHECK((dl - sys.d_lambda(a, lambda)).lpNorm<Eigen::Infinity>() < 1e-8);
    }
  }

  TEST_CASE("branch leaves the trivial line at the bifurcation value") {
    const FracOrder s(0.5);
    const Branch br = continue_branch(s, monomial(3), 1);
    REQUIRE(br.points.size() > 3);
    CHECK(br.points.front().lambda == doctest::Approx(0.5).epsilon(1e-5));
    for (const BranchPoint& pt : br.points) {
      CHECK(pt.residual < 1e-8);
      CHECK(pt.minimal_period == doctest::Approx(kTwoPi / std::sqrt(1.0 - pt.lambda) / std::sqrt(1.0 - pt.lambda)));
    }
    CHECK(br.points.back().amplitude > br.points.front().amplitude);
    const GlobalSolution g = rescale_and_check(br.points[br.points.size() / 2], s, monomial(3));
    CHECK(g.residual.sup < 1e-8);
  }

  TEST_CASE("empirical period from the autocorrelation") {
    const PeriodicProfile u{SpectralField::cosine(4, 3) + SpectralField::constant(4, 0.2), 2 * kTwoPi};
    CHECK(empirical_minimal_period(u) == doctest::Approx(2 * kTwoPi / 3).epsilon(1e-4));
    const PeriodicProfile c{SpectralField::constant(4, 1.0), kTwoPi};
    CHECK(empirical_minimal_period(c) == kTwoPi);
  }

  TEST_CASE("Newton at fixed parameter") {
    const CosineSystem sys(FracOrder(0.5), monomial(3), 16, Formulation::kUnscaled);
    const Branch br = continue_branch(FracOrder(0.5), monomial(3), 1,
                                      ContinuationOptions{.n_modes = 16, .formulation = Formulation::kUnscaled,
                                                          .truncate = false, .max_amplitude = 0.5});
    const BranchPoint& pt = br.points.back();
    Eigen::VectorXd a = sys.coefficients(pt.field);
    a *= 1.05;
    const Eigen::VectorXd sol = newton_fixed_parameter(sys, a, pt.lambda, 1e-13, 20);
    CHECK(sys.residual(sol, pt.lambda).norm() < 1e-12);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(continue_branch(FracOrder(0.5), monomial(3), 0), PreconditionError);
  }
}
