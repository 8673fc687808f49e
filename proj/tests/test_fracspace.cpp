#include "fraclap/errors.hpp"
#include "fraclap/exponents.hpp"
#include "fraclap/field.hpp"
#include "fraclap/xspace.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>
#include <numbers>

using namespace fraclap;
using boost::multiprecision::cpp_rational;

namespace {

// Exact recursion q -> q / (p - 2 s q) in rational arithmetic. Stops when
// q/p reaches 1/(2s) or when the chain stops increasing.
struct RationalChain {
  std::vector<cpp_rational> chain;
  bool exact_threshold = false;
  bool reached = false;
};

RationalChain rational_chain(cpp_rational s, cpp_rational p) {
  const cpp_rational two_s = 2 * s;
  RationalChain out;
  cpp_rational q = 2 / (1 - two_s);
  out.chain.push_back(q);
  for (int i = 0; i < 1000; ++i) {
    const cpp_rational ratio = q / p;
    const cpp_rational bound = 1 / two_s;
    if (ratio == bound) {
      out.exact_threshold = true;
      return out;
    }
    if (ratio > bound) {
      out.reached = true;
      return out;
    }
    const cpp_rational next = q / (p - two_s * q);
    if (next <= q) return out;
    q = next;
    out.chain.push_back(q);
  }
  return out;
}

}  // namespace

TEST_SUITE("fracspace") {
  TEST_CASE("fractional order range") {
    CHECK_THROWS_AS(FracOrder(0.0), PreconditionError);
    CHECK_THROWS_AS(FracOrder(1.0), PreconditionError);
    CHECK_THROWS_WITH_AS(FracOrder(1.5), doctest::Contains("0 < s < 1"), PreconditionError);
    const FracOrder s(0.3);
    CHECK(s.two_s() == doctest::Approx(0.6));
    CHECK(s.kernel_exponent() == doctest::Approx(1.6));
  }

  TEST_CASE("grid round trip and pointwise evaluation") {
    SpectralField u(5);
    u.a(0) = 0.4;
    u.a(3) = -1.2;
    u.b(2) = 0.7;
    u.b(5) = 0.25;
    const GridField g = to_grid(u, 16);
    for (int i = 0; i < 16; ++i) {
      const double x = g.node(i);
      const double direct = 0.2 - 1.2 * std::cos(3 * x) + 0.7 * std::sin(2 * x) + 0.25 * std::sin(5 * x);
      CHECK(g[i] == doctest::Approx(direct).epsilon(1e-13));
      CHECK(u(x) == doctest::Approx(direct).epsilon(1e-13));
    }
    CHECK(max_coeff_diff(from_grid(g, 5), u) < 1e-14);
    CHECK_THROWS_AS(to_grid(u, 8), PreconditionError);
  }

  TEST_CASE("shift and derivative") {
    const SpectralField u = SpectralField::cosine(4, 2) + SpectralField::sine(4, 3, 0.5);
    const double tau = 0.37;
    const SpectralField v = u.shifted(tau);
    const SpectralField du = u.derivative();
    for (double x : {0.0, 0.9, 2.1, 5.5}) {
      CHECK(v(x) == doctest::Approx(u(x + tau)).epsilon(1e-13));
      const double h = 1e-5;
      CHECK(du(x) == doctest::Approx((u(x + h) - u(x - h)) / (2 * h)).epsilon(1e-8));
    }
    CHECK(u.is_even() == false);
    CHECK(SpectralField::cosine(4, 1).is_even());
  }

  TEST_CASE("json and csv serialization") {
    SpectralField u(3);
    u.a(0) = 1.0;
    u.a(2) = 0.5;
    u.b(1) = -0.25;
    const auto j = to_json(u);
    CHECK(j["n_modes"] == 3);
    CHECK(max_coeff_diff(field_from_json(j), u) == 0.0);
    const std::string csv = to_csv(u, 8);
    CHECK(csv.rfind("x,u\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  }

  TEST_CASE("X inner product on the trigonometric basis") {
    const FracOrder s(0.35);
    for (int j = 1; j <= 6; ++j) {
      const SpectralField c = SpectralField::cosine(8, j);
      const SpectralField sn = SpectralField::sine(8, j);
      const double expected = (std::pow(j, 0.7) + 1.0) * std::numbers::pi;
      CHECK(norm_X_squared(c, s) == doctest::Approx(expected).epsilon(1e-14));
      CHECK(norm_X_squared(sn, s) == doctest::Approx(expected).epsilon(1e-14));
      CHECK(std::abs(inner_product_X(c, sn, s)) < 1e-15);
    }
    CHECK(norm_X_squared(SpectralField::constant(8, 1.0), s) == doctest::Approx(2 * std::numbers::pi));
  }

  TEST_CASE("L^q integrals") {
    const SpectralField u = SpectralField::constant(4, 1.0) + SpectralField::cosine(4, 1, 0.5);
    // ∫(1 + cos/2)^2 = 2π + π/4
    CHECK(integral_abs_pow(u, 2.0) == doctest::Approx(2.25 * std::numbers::pi).epsilon(1e-12));
    // ∫(1 + cos/2)^4 = 2π(1 + 6/8 + 3/128)
    CHECK(integral_abs_pow(u, 4.0) == doctest::Approx(2 * std::numbers::pi * (1 + 0.75 + 3.0 / 128)).epsilon(1e-12));
  }

  TEST_CASE("L^q integral with a non-integer exponent refines the grid") {
    // ∫_0^{2π} |cos x|^q = 2 B((q+1)/2, 1/2)
    const double q = 1.5;
    const double exact = 2.0 * gsl_sf_beta(0.5 * (q + 1.0), 0.5);
    CHECK(integral_abs_pow(SpectralField::cosine(4, 1), q) == doctest::Approx(exact).epsilon(1e-6));
  }

  TEST_CASE("critical exponents") {
    CHECK(critical_exponent(FracOrder(0.25)) == doctest::Approx(4.0));
    CHECK(growth_exponent_bound(FracOrder(0.25)) == doctest::Approx(3.0));
    CHECK(std::isinf(growth_exponent_bound(FracOrder(0.5))));
    CHECK(is_subcritical(FracOrder(0.25), 2.9));
    CHECK_FALSE(is_subcritical(FracOrder(0.25), 3.0));
    CHECK(is_subcritical(FracOrder(0.6), 50.0));
    CHECK_THROWS_AS(is_subcritical(FracOrder(0.3), 1.0), PreconditionError);
  }

  TEST_CASE("bootstrap chains agree with exact rational arithmetic") {
    struct Case {
      int s_num, s_den, p_num, p_den;
    };
    for (Case c : {Case{1, 4, 2, 1}, Case{1, 4, 5, 2}, Case{1, 5, 2, 1}, Case{1, 10, 3, 2}, Case{1, 3, 3, 2},
                   Case{2, 5, 11, 10}, Case{1, 8, 7, 4}}) {
      const cpp_rational s(c.s_num, c.s_den), p(c.p_num, c.p_den);
      const RationalChain exact = rational_chain(s, p);
      const ExponentChain got = bootstrap_chain(FracOrder(double(c.s_num) / c.s_den), double(c.p_num) / c.p_den);
      CAPTURE(c.s_num);
      CAPTURE(c.p_num);
      REQUIRE(got.chain.size() == exact.chain.size());
      for (size_t i = 0; i < got.chain.size(); ++i)
        CHECK(got.chain[i] == doctest::Approx(static_cast<double>(exact.chain[i])).epsilon(1e-12));
      CHECK(got.threshold() == exact.exact_threshold);
      CHECK(got.terminated() == (exact.exact_threshold || exact.reached));
    }
  }

  TEST_CASE("subcritical chains terminate, the critical one does not") {
    CHECK(bootstrap_chain(FracOrder(0.1), 1.49).terminated());
    CHECK_FALSE(bootstrap_chain(FracOrder(0.1), 1.5).terminated());
  }

  TEST_CASE("bootstrap chain requires s < 1/2") {
    CHECK_THROWS_AS(bootstrap_chain(FracOrder(0.5), 2.0), PreconditionError);
  }
}
