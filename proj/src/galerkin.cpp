#include "fraclap/galerkin.hpp"

#include "fraclap/errors.hpp"
#include "fraclap/xspace.hpp"

#include <cmath>

namespace fraclap {

SpectralField project_nonlinearity(const SpectralField& u, const Nonlinearity& f, int n_pts, int n_modes) {
  return map_pointwise(u, n_pts, n_modes, f.value);
}

CosineSystem::CosineSystem(FracOrder s, Nonlinearity f, int n_modes, Formulation form)
    : s_(s), f_(std::move(f)), n_modes_(n_modes), n_quad_(quadrature_points(n_modes)), form_(form) {
  if (n_modes < 1) throw PreconditionError("continuation", "cosine system needs at least one mode");
  symbol_.resize(size());
  for (int j = 0; j <= n_modes; ++j) symbol_[j] = std::pow(j, s.two_s());
}

SpectralField CosineSystem::field(const Eigen::VectorXd& a) const {
  SpectralField u(n_modes_);
  for (int j = 0; j <= n_modes_; ++j) u.a(j) = a[j];
  return u;
}

Eigen::VectorXd CosineSystem::coefficients(const SpectralField& u) const {
  const SpectralField r = u.resized(n_modes_);
  Eigen::VectorXd a(size());
  for (int j = 0; j <= n_modes_; ++j) a[j] = r.a(j);
  return a;
}

Eigen::VectorXd CosineSystem::residual(const Eigen::VectorXd& a, double lambda) const {
  const SpectralField fv = project_nonlinearity(field(a), f_, n_quad_, n_modes_);
  Eigen::VectorXd r(size());
  for (int j = 0; j <= n_modes_; ++j) {
    const double linear = form_ == Formulation::kNormal ? (1.0 - lambda) * (symbol_[j] + 1.0) - 1.0
                                                        : symbol_[j] - lambda;
    r[j] = linear * a[j] - fv.a(j);
  }
  return r;
}

Eigen::MatrixXd CosineSystem::jacobian(const Eigen::VectorXd& a, double lambda) const {
  // f'(u) has cosine coefficients g_m up to m = 2N; the projection of
  // f'(u) cos(kx) onto cos(jx) is (g_{j+k} + g_{|j-k|})/2, and g_j/2 for k = 0.
  const int n2 = 2 * n_modes_;
  const SpectralField g = map_pointwise(field(a), n_quad_, n2, f_.derivative);
  Eigen::MatrixXd jac(size(), size());
  for (int j = 0; j <= n_modes_; ++j) {
    jac(j, 0) = -0.5 * g.a(j);
    for (int k = 1; k <= n_modes_; ++k) jac(j, k) = -0.5 * (g.a(j + k) + g.a(std::abs(j - k)));
    jac(j, j) += form_ == Formulation::kNormal ? (1.0 - lambda) * (symbol_[j] + 1.0) - 1.0 : symbol_[j] - lambda;
  }
  return jac;
}

Eigen::VectorXd CosineSystem::d_lambda(const Eigen::VectorXd& a, double) const {
  Eigen::VectorXd d(size());
  for (int j = 0; j <= n_modes_; ++j) d[j] = form_ == Formulation::kNormal ? -(symbol_[j] + 1.0) * a[j] : -a[j];
  return d;
}

double CosineSystem::pointwise_residual(const Eigen::VectorXd& a, double lambda) const {
  const SpectralField u = field(a);
  SpectralField lu(n_modes_);
  for (int j = 1; j <= n_modes_; ++j) lu.a(j) = symbol_[j] * a[j];
  const int n_fine = 2 * n_quad_;
  const GridField gu = to_grid(u, n_fine);
  const GridField glu = to_grid(lu, n_fine);
  double sup = 0.0;
  for (int i = 0; i < n_fine; ++i) {
    const double v = gu[i];
    const double r = form_ == Formulation::kNormal ? (1.0 - lambda) * (glu[i] + v) - v - f_.value(v)
                                                   : glu[i] - lambda * v - f_.value(v);
    sup = std::max(sup, std::abs(r));
  }
  return sup;
}

}  // namespace fraclap
