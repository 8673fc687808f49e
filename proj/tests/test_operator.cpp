#include "fraclap/errors.hpp"
#include "fraclap/operator.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fraclap;

namespace {

SpectralField sample_field(int n_modes, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  SpectralField u(n_modes);
  u.a(0) = d(rng);
  for (int j = 1; j <= n_modes; ++j) {
    u.a(j) = d(rng) / (j * j);
    u.b(j) = d(rng) / (j * j);
  }
  return u;
}

}  // namespace

TEST_SUITE("operator") {
  TEST_CASE("spectral operator multiplies by j^{2s}") {
    const FracOrder s(0.3);
    const SpectralField u = sample_field(10, 3);
    const SpectralField lu = SpectralOperator(s, 10).apply(u);
    CHECK(lu.a(0) == 0.0);
    for (int j = 1; j <= 10; ++j) {
      CHECK(lu.a(j) == doctest::Approx(std::pow(j, 0.6) * u.a(j)).epsilon(1e-15));
      CHECK(lu.b(j) == doctest::Approx(std::pow(j, 0.6) * u.b(j)).epsilon(1e-15));
    }
  }

  TEST_CASE("quadrature symbol reproduces m^{2s}") {
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.95}) {
      const QuadratureOperator op(FracOrder(s), 1024);
      CHECK(std::abs(op.symbol(0)) < 1e-10);
      for (int m : {1, 2, 5, 16}) {
        CAPTURE(s);
        CAPTURE(m);
        CHECK(op.symbol(m) == doctest::Approx(std::pow(m, 2 * s)).epsilon(1e-8));
      }
      // High modes lose accuracy like (m h)^{8-2s}.
      CHECK(op.symbol(40) == doctest::Approx(std::pow(40, 2 * s)).epsilon(1e-6));
    }
  }

  TEST_CASE("quadrature agrees with the spectral operator on smooth fields") {
    for (double s : {0.2, 0.5, 0.8}) {
      const FracOrder o(s);
      const SpectralField u = sample_field(24, 7);
      const GridField exact = to_grid(SpectralOperator(o, 24).apply(u), 1024);
      const GridField got = QuadratureOperator(o, 1024).apply(to_grid(u, 1024));
      double err = 0.0;
      for (int i = 0; i < 1024; ++i) err = std::max(err, std::abs(got[i] - exact[i]));
      CAPTURE(s);
      CHECK(err < 1e-8);
    }
  }

  TEST_CASE("correction stencils are consistent difference formulas") {
    // Applied to x^2 the u'' stencil gives 2 h^2 -> sum c_i i^2 = 2 for the first correction.
    const QuadratureOperator op(FracOrder(0.5), 64, kTwoPi, 1);
    const auto& c = op.correction_stencil();
    double s0 = 0.0, s2 = 0.0;
    for (int i = -3; i <= 3; ++i) {
      s0 += c[i + 3];
      s2 += c[i + 3] * i * i;
    }
    CHECK(std::abs(s0) < 1e-12);
    CHECK(s2 != 0.0);
  }

  TEST_CASE("bilinear form closed form and quadrature") {
    const FracOrder s(0.6);
    const SpectralField u = sample_field(12, 11);
    const SpectralField v = sample_field(12, 12);
    double expected = 0.0;
    for (int j = 1; j <= 12; ++j) expected += std::pow(j, 1.2) * std::numbers::pi * (u.a(j) * v.a(j) + u.b(j) * v.b(j));
    CHECK(bilinear_form(u, v, s) == doctest::Approx(expected).epsilon(1e-14));
    const QuadratureOperator op(s, 256);
    CHECK(bilinear_form_quadrature(u, v, op) == doctest::Approx(expected).epsilon(1e-9));
  }

  TEST_CASE("operator of a period-T profile scales like (2π/T)^{2s}") {
    const double T = 3.0 * kTwoPi;
    const QuadratureOperator op(FracOrder(0.5), 256, T);
    std::vector<double> g(256);
    for (int i = 0; i < 256; ++i) g[i] = std::cos(kTwoPi * i / 256.0 * 2.0);
    const auto lg = op.apply(g);
    // cos(2·2πx/T) has symbol (2·2π/T)^{1}.
    for (int i = 0; i < 256; i += 17) CHECK(lg[i] == doctest::Approx(2.0 / 3.0 * g[i]).scale(1.0).epsilon(1e-9));
  }

  TEST_CASE("convexity catalog and inequality") {
    for (const ConvexFunction& phi : convex_catalog()) {
      CHECK(probe_convexity(phi));
      const ConvexityReport rep = convexity_inequality_check(sample_field(12, 5), phi, FracOrder(0.4), 256);
      CHECK(rep.max_violation <= 1e-6);
    }
    ConvexFunction concave{"neg-square", [](double t) { return -t * t; }, [](double t) { return -2 * t; }};
    CHECK_FALSE(probe_convexity(concave));
    CHECK_THROWS_AS(convexity_inequality_check(sample_field(4, 1), concave, FracOrder(0.4), 64), PreconditionError);
  }

  TEST_CASE("periodic residual of an exact eigenfunction") {
    const PeriodicProfile u{SpectralField::cosine(4, 3), 2.0 * kTwoPi};
    // (-Δ)^s cos(3x/2) = (3/2)^{2s} cos(3x/2).
    const double m = std::pow(1.5, 0.8);
    const PeriodicResidual r = periodic_residual(u, FracOrder(0.4), [m](double v) { return m * v; });
    CHECK(r.sup < 1e-9);
    CHECK(r.n_check == 32);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(QuadratureOperator(FracOrder(0.5), 8), PreconditionError);
    CHECK_THROWS_AS(QuadratureOperator(FracOrder(0.5), 100), PreconditionError);
    CHECK_THROWS_AS(QuadratureOperator(FracOrder(0.5), 64, kTwoPi, 4), PreconditionError);
  }
}
