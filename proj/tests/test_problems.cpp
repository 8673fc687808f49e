#include "fraclap/errors.hpp"
#include "fraclap/problems.hpp"

#include <doctest.h>

#include <cmath>

using namespace fraclap;

namespace {

// Harmonic extension of Q = 2/(1+x²) to the upper half plane.
double poisson_extension(double x, double y) { return 2.0 * (1.0 + y) / (x * x + (1.0 + y) * (1.0 + y)); }

// (-Δ)^{1/2}Q(x) = -∂_y P(x, 0), by a fourth-order central difference.
double half_laplacian_oracle(double x) {
  const double h = 1e-3;
  const auto P = [x](double y) { return poisson_extension(x, y); };
  return -(-P(2 * h) + 8 * P(h) - 8 * P(-h) + P(-2 * h)) / (12 * h);
}

}  // namespace

TEST_SUITE("problems") {
  TEST_CASE("problem definitions and preconditions") {
    const ProblemSpec even = make_problem(Family::kEvenPower, FracOrder(0.5), 2.0);
    CHECK(even.rhs(-0.5) == doctest::Approx(-0.5 + 0.25));
    const ProblemSpec minus = make_problem(Family::kOddMinus, FracOrder(0.5), 3.0);
    CHECK(minus.rhs(2.0) == doctest::Approx(-2.0 + 8.0));
    CHECK_THROWS_WITH_AS(make_problem(Family::kOddPlus, FracOrder(0.25), 3.0), doctest::Contains("(1+2s)/(1-2s)"),
                         PreconditionError);
    CHECK_THROWS_AS(make_problem(Family::kQuadraticShifted, FracOrder(0.15)), PreconditionError);
    for (Family f : {Family::kEvenPower, Family::kOddPlus, Family::kOddMinus, Family::kBenjaminOnoStationary})
      CHECK(family_from_name(family_name(f)) == f);
    CHECK_THROWS_AS(family_from_name("none"), PreconditionError);
  }

  TEST_CASE("fractional Laplacian of a period-T profile") {
    const PeriodicProfile u{SpectralField::cosine(4, 2), 3 * kTwoPi};
    const PeriodicProfile lu = fractional_laplacian(u, FracOrder(0.3));
    CHECK(lu.shape.a(2) == doctest::Approx(std::pow(2.0 / 3.0, 0.6)));
  }

  TEST_CASE("line operator reproduces the harmonic-extension oracle") {
    for (double x : {0.0, 0.5, 1.0, 2.0, 3.7, 8.0}) {
      CAPTURE(x);
      const double got = line_fractional_laplacian(soliton, x, FracOrder(0.5));
      CHECK(got == doctest::Approx(half_laplacian_oracle(x)).scale(1.0).epsilon(1e-8));
      CHECK(got == doctest::Approx(2 * (1 - x * x) / ((1 + x * x) * (1 + x * x))).scale(1.0).epsilon(1e-7));
    }
    CHECK(soliton(0.0) == 2.0);
    const SolitonReport rep = soliton_identity_check(41);
    CHECK(rep.sup_residual < 1e-3);
    CHECK_THROWS_AS(line_fractional_laplacian(soliton, 39.5, FracOrder(0.5)), PreconditionError);
  }

  TEST_CASE("even-power pair and the shift identity") {
    const FracOrder s(0.5);
    const SolutionPair pair = solve_even_power_pair(s, 2.0);
    CHECK(std::abs(pair.period / kTwoPi - 1.0) <= 0.05);
    CHECK(pair.residual[0] < 1e-8);
    CHECK(pair.residual[1] < 1e-8);
    CHECK(pair.min_value > -1.0);
    CHECK(max_coeff_diff(pair.u[1].shape, pair.u[0].shape.shifted(std::numbers::pi)) < 1e-15);

    const ProblemSpec even = make_problem(Family::kEvenPower, s, 2.0);
    const ProblemSpec shifted = make_problem(Family::kQuadraticShifted, s);
    PeriodicProfile u = pair.u[0];
    u.shape += SpectralField::constant(u.shape.n_modes(), 1.0);
    // Right-hand sides agree identically under u = v + 1.
    for (double v : {-0.3, 0.0, 0.2, 1.7}) CHECK(shifted.rhs(v + 1.0) == doctest::Approx(even.rhs(v)).epsilon(1e-12));
    CHECK(global_residual(u, shifted).sup < 1e-8);
    CHECK(benjamin_ono_residual(u, s) < 1e-6);
  }

  TEST_CASE("amplitude grows away from the bifurcation value") {
    const double star = 0.5;
    const auto rows = amplitude_scan(FracOrder(0.5), 2.0, {star, star + 1e-3, 10.0});
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[2].amplitude.has_value());
  }

  TEST_CASE("odd families") {
    const ExampleReport plus = run_example(Family::kOddPlus, FracOrder(0.5), 3.0);
    CHECK(plus.passed);
    const ExampleReport minus = run_example(Family::kOddMinus, FracOrder(0.6), 3.0);
    CHECK(minus.passed);
    REQUIRE(minus.solutions.size() == 2);
    CHECK(minus.solutions[0].profile.shape.a(0) > 0.0);
    CHECK(minus.solutions[1].profile.shape.a(0) < 0.0);
  }

  TEST_CASE("Benjamin-Ono suite at s = 1/2") {
    const BenjaminOnoReport rep = benjamin_ono_suite(FracOrder(0.5));
    CHECK(rep.passed);
    REQUIRE(rep.soliton.has_value());
    REQUIRE(rep.peaks_by_period.size() == 3);
    CHECK(std::abs(rep.peaks_by_period.back().second - 2.0) < 0.2);
    for (const SuiteItem& item : rep.items) {
      CAPTURE(item.name);
      CHECK(item.bo_residual <= 1e-4);
      CHECK(item.residual <= 1e-5);
    }
  }
}
