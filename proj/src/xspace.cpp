#include "fraclap/xspace.hpp"

#include "fraclap/errors.hpp"

#include <cmath>

namespace fraclap {
namespace {

void require_same_modes(const SpectralField& u, const SpectralField& v) {
  if (u.n_modes() != v.n_modes()) throw PreconditionError("fracspace", "mode-count mismatch");
}

}  // namespace

double inner_product_X(const SpectralField& u, const SpectralField& v, FracOrder s) {
  require_same_modes(u, v);
  double sum = 0.5 * u.a(0) * v.a(0);
  for (int j = 1; j <= u.n_modes(); ++j)
    sum += (std::pow(j, s.two_s()) + 1.0) * (u.a(j) * v.a(j) + u.b(j) * v.b(j));
  return std::numbers::pi * sum;
}

double norm_X_squared(const SpectralField& u, FracOrder s) { return inner_product_X(u, u, s); }

double norm_X(const SpectralField& u, FracOrder s) { return std::sqrt(norm_X_squared(u, s)); }

double gagliardo_part(const SpectralField& u, FracOrder s) {
  double sum = 0.0;
  for (int j = 1; j <= u.n_modes(); ++j)
    sum += std::pow(j, s.two_s()) * (u.a(j) * u.a(j) + u.b(j) * u.b(j));
  return std::numbers::pi * sum;
}

double l2_inner(const SpectralField& u, const SpectralField& v) {
  require_same_modes(u, v);
  double sum = 0.5 * u.a(0) * v.a(0);
  for (int j = 1; j <= u.n_modes(); ++j) sum += u.a(j) * v.a(j) + u.b(j) * v.b(j);
  return std::numbers::pi * sum;
}

double l2_norm_squared(const SpectralField& u) { return l2_inner(u, u); }

int quadrature_points(int n_modes) { return next_power_of_two(4 * (n_modes + 1)); }

double integral_abs_pow(const SpectralField& u, double q, int n_pts) {
  if (n_pts == 0) n_pts = quadrature_points(u.n_modes());
  const auto trapezoid = [&u, q](int n) {
    const GridField g = to_grid(u, n);
    double sum = 0.0;
    for (double v : g.values()) sum += std::pow(std::abs(v), q);
    return sum * g.spacing();
  };
  double value = trapezoid(n_pts);
  // Even integer powers are trigonometric polynomials of degree q N and the
  // grid integrates them exactly. Otherwise refine until two grids agree.
  if (q == std::round(q) && static_cast<long>(q) % 2 == 0 && n_pts > q * u.n_modes()) return value;
  for (int n = 2 * n_pts; n <= 16 * n_pts; n *= 2) {
    const double finer = trapezoid(n);
    const bool converged = std::abs(finer - value) <= 1e-13 * (1.0 + std::abs(finer));
    value = finer;
    if (converged) break;
  }
  return value;
}

}  // namespace fraclap
