#include "fraclap/operator.hpp"

#include "fraclap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fraclap {
namespace {

constexpr const char* kModule = "operator";

// Centered seven-point stencils for u'' (order 6), u'''' (order 4) and
// u^(6) (order 2), to be divided by h^2, h^4, h^6.
constexpr std::array<std::array<double, 7>, 3> kDerivativeStencils = {{
    {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90},
    {-1.0 / 6, 2.0, -13.0 / 2, 28.0 / 3, -13.0 / 2, 2.0, -1.0 / 6},
    {1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0},
}};

int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

}  // namespace

SpectralOperator::SpectralOperator(FracOrder s, int n_modes) : s_(s) {
  if (n_modes < 0) throw PreconditionError(kModule, "n_modes must be nonnegative");
  multipliers_.resize(static_cast<size_t>(n_modes + 1));
  for (int j = 0; j <= n_modes; ++j) multipliers_[j] = std::pow(j, s.two_s());
}

SpectralField SpectralOperator::apply(const SpectralField& u) const {
  if (u.n_modes() != n_modes()) throw PreconditionError(kModule, "operator and field mode counts differ");
  SpectralField out(n_modes());
  for (int j = 1; j <= n_modes(); ++j) {
    out.a(j) = multipliers_[j] * u.a(j);
    out.b(j) = multipliers_[j] * u.b(j);
  }
  return out;
}

SpectralField apply_spectral(const SpectralOperator& op, const SpectralField& u) { return op.apply(u); }

QuadratureOperator::QuadratureOperator(FracOrder s, int n_pts, double period, int correction_terms)
    : table_([&] {
        if (!is_power_of_two(n_pts) || n_pts < 16)
          throw PreconditionError(kModule, "quadrature needs a power-of-two grid with at least 16 nodes");
        if (correction_terms < 0 || correction_terms > kMaxCorrectionTerms)
          throw PreconditionError(kModule, "correction_terms must be in 0..3");
        return build_table(s, n_pts, period);
      }()) {
  const double h = spacing();
  weights_.resize(table_.h_values.size());
  for (size_t j = 0; j < weights_.size(); ++j) weights_[j] = table_.h_values[j] * h;

  double factorial = 1.0;
  for (int k = 0; k < correction_terms; ++k) {
    const int order = 2 * k + 2;
    factorial *= (order - 1) * order;
    const double zeta = std::riemann_zeta(s.two_s() - 1.0 - 2 * k);
    const double coef = table_.normalization * 2.0 * zeta * std::pow(h, -s.two_s()) / factorial;
    for (int m = 0; m < 7; ++m) stencil_[m] += coef * kDerivativeStencils[k][m];
  }
}

double QuadratureOperator::apply_at(std::span<const double> u, int i) const {
  const int n = n_pts();
  if (static_cast<int>(u.size()) != n) throw PreconditionError(kModule, "sample count differs from operator grid");
  const double ui = u[i];
  double sum = 0.0;
  for (int j = 1; j < n; ++j) sum += (ui - u[wrap(i + j, n)]) * weights_[j - 1];
  for (int m = -kStencilHalfWidth; m <= kStencilHalfWidth; ++m)
    sum += stencil_[m + kStencilHalfWidth] * u[wrap(i + m, n)];
  return sum;
}

std::vector<double> QuadratureOperator::apply(std::span<const double> u) const {
  std::vector<double> out(u.size());
  for (int i = 0; i < n_pts(); ++i) out[i] = apply_at(u, i);
  return out;
}

GridField QuadratureOperator::apply(const GridField& u) const {
  if (std::abs(period() - kTwoPi) > 1e-14 * kTwoPi)
    throw PreconditionError(kModule, "grid fields live on [0, 2π); use the span overload for other periods");
  return GridField(apply(u.values()));
}

double QuadratureOperator::symbol(int m) const {
  const int n = n_pts();
  const double theta = kTwoPi * m / n;
  double sum = 0.0;
  for (int j = 1; j < n; ++j) sum += (1.0 - std::cos(theta * j)) * weights_[j - 1];
  for (int r = -kStencilHalfWidth; r <= kStencilHalfWidth; ++r)
    sum += stencil_[r + kStencilHalfWidth] * std::cos(theta * r);
  return sum;
}

double bilinear_form(const SpectralField& u, const SpectralField& v, FracOrder s) {
  if (u.n_modes() != v.n_modes()) throw PreconditionError(kModule, "mode-count mismatch");
  double sum = 0.0;
  for (int j = 1; j <= u.n_modes(); ++j) sum += std::pow(j, s.two_s()) * (u.a(j) * v.a(j) + u.b(j) * v.b(j));
  return std::numbers::pi * sum;
}

double bilinear_form_quadrature(const SpectralField& u, const SpectralField& v, const QuadratureOperator& op) {
  const GridField gu = to_grid(u, op.n_pts());
  const GridField gv = to_grid(v, op.n_pts());
  const auto lu = op.apply(gu.values());
  const auto lv = op.apply(gv.values());
  double sum = 0.0;
  for (int i = 0; i < op.n_pts(); ++i) sum += gv[i] * lu[i] + gu[i] * lv[i];
  return 0.5 * sum * op.spacing();
}

double inner_product_quadrature(const SpectralField& u, const SpectralField& v, const QuadratureOperator& op) {
  const GridField gu = to_grid(u, op.n_pts());
  const GridField gv = to_grid(v, op.n_pts());
  double l2 = 0.0;
  for (int i = 0; i < op.n_pts(); ++i) l2 += gu[i] * gv[i];
  return bilinear_form_quadrature(u, v, op) + l2 * op.spacing();
}

ConvexFunction convex_identity() {
  return {"identity", [](double t) { return t; }, [](double) { return 1.0; }};
}

ConvexFunction convex_abs() {
  return {"abs", [](double t) { return std::abs(t); },
          [](double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }};
}

ConvexFunction convex_truncated_power(double beta, double cap) {
  if (!(beta >= 1.0) || !(cap > 0.0))
    throw PreconditionError(kModule, "truncated power needs beta >= 1 and cap > 0");
  auto phi = [beta, cap](double t) {
    if (t <= 0.0) return 0.0;
    if (t <= cap) return std::pow(t, beta);
    return std::pow(cap, beta) + beta * std::pow(cap, beta - 1.0) * (t - cap);
  };
  auto dphi = [beta, cap](double t) {
    if (t <= 0.0) return 0.0;
    return beta * std::pow(std::min(t, cap), beta - 1.0);
  };
  return {"truncated_power(beta=" + std::to_string(beta) + ",T=" + std::to_string(cap) + ")", phi, dphi};
}

ConvexFunction convex_softplus() {
  return {"softplus",
          [](double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); },
          [](double t) { return 1.0 / (1.0 + std::exp(-t)); }};
}

std::vector<ConvexFunction> convex_catalog() {
  return {convex_identity(), convex_abs(), convex_truncated_power(2.0, 10.0), convex_truncated_power(1.5, 0.5),
          convex_softplus()};
}

bool probe_convexity(const ConvexFunction& phi, double range, double tol) {
  constexpr int kProbe = 200;
  for (int i = 0; i <= kProbe; ++i) {
    for (int j = i + 2; j <= kProbe; j += 3) {
      const double a = -range + 2.0 * range * i / kProbe;
      const double b = -range + 2.0 * range * j / kProbe;
      const double mid = phi.phi(0.5 * (a + b));
      const double chord = 0.5 * (phi.phi(a) + phi.phi(b));
      if (mid > chord + tol * (1.0 + std::abs(chord))) return false;
    }
  }
  return true;
}

ConvexityReport convexity_inequality_check(const SpectralField& u, const ConvexFunction& phi, FracOrder s,
                                           int n_samples) {
  if (!probe_convexity(phi)) throw PreconditionError(kModule, "function '" + phi.name + "' is not convex");
  const QuadratureOperator op(s, n_samples);
  const GridField g = to_grid(u, n_samples);
  std::vector<double> phi_u(g.values().begin(), g.values().end());
  for (double& v : phi_u) v = phi.phi(v);
  const auto lhs = op.apply(phi_u);
  const auto lu = op.apply(g.values());
  ConvexityReport rep{phi.name, -std::numeric_limits<double>::infinity(), 0, n_samples};
  for (int i = 0; i < n_samples; ++i) {
    const double viol = lhs[i] - phi.dphi(g[i]) * lu[i];
    if (viol > rep.max_violation) {
      rep.max_violation = viol;
      rep.worst_index = i;
    }
  }
  return rep;
}

}  // namespace fraclap

namespace fraclap {

PeriodicResidual periodic_residual(const PeriodicProfile& u, FracOrder s, const std::function<double(double)>& rhs,
                                   int n_check, int n_pts) {
  if (n_check < 1) throw PreconditionError(kModule, "need at least one check point");
  if (!(u.period > 0.0)) throw PreconditionError(kModule, "period must be positive");
  if (n_pts == 0) n_pts = std::max(1024, next_power_of_two(8 * (u.shape.n_modes() + 1)));
  if (n_pts < 2 * (2 * u.shape.n_modes() + 2))
    throw PreconditionError(kModule, "residual grid too coarse for the field's modes");
  const QuadratureOperator fine(s, n_pts, u.period);
  const QuadratureOperator coarse(s, n_pts / 2, u.period);
  PeriodicResidual rep{0.0, 0.0, n_check, n_pts};
  for (int c = 0; c < n_check; ++c) {
    const double x = u.period * (c + 0.381966) / n_check;
    const SpectralField anchored = u.shape.shifted(u.wavenumber() * x);
    const GridField g_fine = to_grid(anchored, n_pts);
    const GridField g_coarse = to_grid(anchored, n_pts / 2);
    const double l_fine = fine.apply_at(g_fine.values(), 0);
    const double l_coarse = coarse.apply_at(g_coarse.values(), 0);
    rep.sup = std::max(rep.sup, std::abs(l_fine - rhs(g_fine[0])));
    rep.richardson_gap = std::max(rep.richardson_gap, std::abs(l_fine - l_coarse));
  }
  return rep;
}

}  // namespace fraclap
