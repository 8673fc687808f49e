#include "fraclap/linear.hpp"

#include "fraclap/errors.hpp"
#include "fraclap/xspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fraclap {
namespace {

constexpr const char* kModule = "linear";

}  // namespace

ResolventK::ResolventK(FracOrder s, int n_modes) : s_(s) {
  if (n_modes < 0) throw PreconditionError(kModule, "n_modes must be nonnegative");
  diag_.resize(static_cast<size_t>(n_modes + 1));
  for (int j = 0; j <= n_modes; ++j) diag_[j] = 1.0 / (std::pow(j, s.two_s()) + 1.0);
}

SpectralField ResolventK::apply(const SpectralField& f) const {
  if (f.n_modes() != n_modes()) throw PreconditionError(kModule, "resolvent and field mode counts differ");
  SpectralField u(n_modes());
  for (int j = 0; j <= n_modes(); ++j) {
    u.a(j) = diag_[j] * f.a(j);
    if (j > 0) u.b(j) = diag_[j] * f.b(j);
  }
  return u;
}

SpectralField solve_linear(const SpectralField& f, FracOrder s) {
  if (!f.is_finite()) throw PreconditionError(kModule, "right-hand side must be finite");
  return ResolventK(s, f.n_modes()).apply(f);
}

double linear_residual(const SpectralField& u, const SpectralField& f, FracOrder s) {
  const SpectralField r = SpectralOperator(s, u.n_modes()).apply(u) + u - f;
  return std::sqrt(l2_norm_squared(r));
}

double rayleigh_quotient_quadrature(const SpectralField& u, const QuadratureOperator& op) {
  const GridField g = to_grid(u, op.n_pts());
  const auto lu = op.apply(g.values());
  double num = 0.0, den = 0.0;
  for (int i = 0; i < op.n_pts(); ++i) {
    num += g[i] * lu[i];
    den += g[i] * g[i];
  }
  if (den == 0.0) throw PreconditionError(kModule, "Rayleigh quotient of the zero field");
  return num / den;
}

void EigenReport::require_passed() const {
  if (passed) return;
  std::ostringstream os;
  os << "eigenvalue check failed at s=" << s.value() << ": worst k=" << worst_k << " error " << worst_error
     << " (tolerance " << tolerance << "), " << eigenvalues_below_gap << " discrete eigenvalues below the gap, expected "
     << expected_below_gap;
  throw ConvergenceError(kModule, os.str());
}

EigenReport eigen_verify(FracOrder s, int k_max, int resolution, double tolerance) {
  if (k_max < 0 || 2 * k_max + 2 > resolution)
    throw PreconditionError(kModule, "k_max must satisfy 0 <= k_max and 2 k_max + 2 <= resolution");
  const QuadratureOperator op(s, resolution);
  const int n_modes = resolution / 2 - 1;
  EigenReport rep{s, resolution, tolerance, {}, 0, 2 * k_max + 1, -1, 0.0, true};
  for (int k = 0; k <= k_max; ++k) {
    const double expected = std::pow(k, s.two_s());
    EigenEntry e{k, expected, rayleigh_quotient_quadrature(SpectralField::cosine(n_modes, k), op), 0.0, 0.0};
    if (k == 0) {
      e.rel_error = std::abs(e.rayleigh_cos);
    } else {
      e.rayleigh_sin = rayleigh_quotient_quadrature(SpectralField::sine(n_modes, k), op);
      e.rel_error = std::max(std::abs(e.rayleigh_cos - expected), std::abs(e.rayleigh_sin - expected)) / expected;
    }
    if (e.rel_error > rep.worst_error || rep.worst_k < 0) {
      rep.worst_error = e.rel_error;
      rep.worst_k = k;
    }
    rep.entries.push_back(e);
  }
  const double lo = std::pow(k_max, s.two_s());
  const double threshold = lo + 0.5 * (std::pow(k_max + 1, s.two_s()) - lo);
  // The circulant matrix has eigenvalues symbol(m) for m = 0..n-1 with symbol(m) = symbol(n-m).
  for (int m = 0; m < resolution; ++m)
    if (op.symbol(std::min(m, resolution - m)) < threshold) ++rep.eigenvalues_below_gap;
  rep.passed = rep.worst_error <= tolerance && rep.eigenvalues_below_gap == rep.expected_below_gap;
  return rep;
}

RayleighMin rayleigh_min_Fk(FracOrder s, int k, int n_modes) {
  if (k < 1) throw PreconditionError(kModule, "subspace index k must be at least 1");
  if (k > n_modes) throw PreconditionError(kModule, "k must not exceed n_modes");
  // Over the truncated basis the quotient is a weighted mean of j^{2s}+1, j >= k,
  // so its minimum is the smallest weight.
  const ResolventK K(s, n_modes);
  int best = k;
  for (int j = k; j <= n_modes; ++j)
    if (K.diag()[j] > K.diag()[best]) best = j;
  return {1.0 / K.diag()[best], SpectralField::cosine(n_modes, best)};
}

}  // namespace fraclap
