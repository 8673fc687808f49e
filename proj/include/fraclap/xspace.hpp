#pragma once

#include "fraclap/field.hpp"
#include "fraclap/frac_order.hpp"

namespace fraclap {

/// Closed form of the X inner product:
///   π a_0 a_0'/2 + π sum_j (j^{2s}+1)(a_j a_j' + b_j b_j').
double inner_product_X(const SpectralField& u, const SpectralField& v, FracOrder s);
double norm_X_squared(const SpectralField& u, FracOrder s);
double norm_X(const SpectralField& u, FracOrder s);

/// Kernel part of the squared X norm, π sum_j j^{2s}(a_j^2 + b_j^2).
double gagliardo_part(const SpectralField& u, FracOrder s);

/// ∫_0^{2π} u v by Parseval.
double l2_inner(const SpectralField& u, const SpectralField& v);
double l2_norm_squared(const SpectralField& u);

/// Grid size used for nonlinear integrals: a power of two >= 4(n_modes+1).
int quadrature_points(int n_modes);

/// ∫_0^{2π} |u|^q by the trapezoid rule on n_pts nodes (0 selects
/// quadrature_points(n_modes)).
double integral_abs_pow(const SpectralField& u, double q, int n_pts = 0);

}  // namespace fraclap
