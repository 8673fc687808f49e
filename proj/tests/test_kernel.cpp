#include "fraclap/errors.hpp"
#include "fraclap/kernel.hpp"

#include <doctest.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_zeta.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace fraclap;

namespace {

double hurwitz_oracle(double z, double s) {
  const double alpha = 1.0 + 2.0 * s;
  const double q = z / (2.0 * std::numbers::pi);
  return std::pow(2.0 * std::numbers::pi, -alpha) * (gsl_sf_hzeta(alpha, q) + gsl_sf_hzeta(alpha, 1.0 - q));
}

}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("lattice sum matches the GSL Hurwitz zeta") {
    for (double s : {0.05, 0.25, 0.5, 0.75, 0.95}) {
      for (double z : {1e-3, 0.1, 1.0, 2.5, std::numbers::pi, 4.0, 6.2}) {
        const KernelValue h = eval_H(z, FracOrder(s));
        CAPTURE(s);
        CAPTURE(z);
        CHECK(h.value == doctest::Approx(hurwitz_oracle(z, s)).epsilon(1e-13));
        CHECK(h.err_bound <= 1e-14 * h.value);
      }
    }
  }

  TEST_CASE("closed form at s = 1/2") {
    // sum_k (z + 2πk)^{-2} = 1 / (4 sin^2(z/2))
    for (double z : {0.3, 1.7, std::numbers::pi, 5.0}) {
      const double sn = std::sin(0.5 * z);
      CHECK(eval_H(z, FracOrder(0.5)).value == doctest::Approx(0.25 / (sn * sn)).epsilon(1e-14));
    }
  }

  TEST_CASE("symmetry and direct summation") {
    const FracOrder s(0.4);
    CHECK(eval_H(1.1, s).value == doctest::Approx(eval_H(2 * std::numbers::pi - 1.1, s).value).epsilon(1e-14));
    const KernelValue direct = lattice_sum_direct(2.0, s, 200000);
    CHECK(std::abs(direct.value - eval_H(2.0, s).value) <= direct.err_bound + 1e-14);
  }

  TEST_CASE("period scaling against a direct lattice sum at T = 4π") {
    const double T = 4.0 * std::numbers::pi;
    for (double s : {0.3, 0.5, 0.8}) {
      const double alpha = 1.0 + 2.0 * s;
      for (double z : {0.5, 3.0, 7.0}) {
        double sum = std::pow(z, -alpha);
        for (int k = 1; k < 400000; ++k) sum += std::pow(z + k * T, -alpha) + std::pow(k * T - z, -alpha);
        // Integral tail of the two remaining one-sided sums.
        const double n = 400000.0 * T;
        sum += 2.0 * std::pow(n, -2.0 * s) / (2.0 * s * T);
        CHECK(eval_H_periodic(z, FracOrder(s), T).value == doctest::Approx(sum).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("normalization constant") {
    CHECK(normalization_constant(FracOrder(0.5)) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
    for (double s : {0.2, 0.6, 0.9}) {
      const double ref = std::pow(4.0, s) * s * gsl_sf_gamma(s + 0.5) / (std::sqrt(std::numbers::pi) * gsl_sf_gamma(1.0 - s));
      CHECK(normalization_constant(FracOrder(s)) == doctest::Approx(ref).epsilon(1e-14));
    }
  }

  TEST_CASE("kernel table") {
    const KernelTable t = build_table(FracOrder(0.5), 16);
    // Nodes z_j = 2πj/n for j = 1..n-1.
    REQUIRE(t.nodes.size() == 15);
    CHECK(t.nodes[7] == doctest::Approx(std::numbers::pi));
    // Values carry the normalization c_1 = 1/π at s = 1/2.
    CHECK(t.h_values[7] == doctest::Approx(0.25 / std::numbers::pi).epsilon(1e-14));
    for (int j = 1; j < 8; ++j) CHECK(t.h_values[j - 1] == t.h_values[15 - j]);
    const std::string csv = table_csv(t);
    CHECK(csv.rfind("z,H,err_bound\n", 0) == 0);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(eval_H(0.0, FracOrder(0.5)), PreconditionError);
    CHECK_THROWS_AS(eval_H(7.0, FracOrder(0.5)), PreconditionError);
    CHECK_THROWS_AS(build_table(FracOrder(0.5), 2), PreconditionError);
  }
}
