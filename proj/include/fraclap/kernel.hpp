#pragma once

#include "fraclap/frac_order.hpp"

#include <string>
#include <vector>

namespace fraclap {

/// A kernel value together with a bound on its absolute error.
struct KernelValue {
  double value;
  double err_bound;
};

inline constexpr double kDefaultKernelTol = 1e-14;

/// Periodized kernel H(z) = sum_n |z - 2πn|^{-(1+2s)} for 0 < z < 2π.
/// Written as two Hurwitz sums, each summed directly to an adaptive cutoff and
/// closed with an Euler-Maclaurin tail; the error bound is the first omitted
/// Euler-Maclaurin term plus a summation round-off allowance.
/// Throws ConvergenceError when rel_tol cannot be met.
KernelValue eval_H(double z, FracOrder s, double rel_tol = kDefaultKernelTol);

/// Kernel of the period-T lattice, sum_n |z - T n|^{-(1+2s)} for 0 < z < T,
/// obtained from eval_H by the scaling (2π/T)^{1+2s} H(2πz/T).
KernelValue eval_H_periodic(double z, FracOrder s, double period, double rel_tol = kDefaultKernelTol);

/// Reference evaluation: the terms |n| <= n_terms summed directly, the rest
/// replaced by the midpoint integral from n_terms + 1/2. The error bound is the
/// integral comparison bound for the convex tail.
KernelValue lattice_sum_direct(double z, FracOrder s, long n_terms);

/// c_1(s) = 2^{2s} s Γ(s+1/2) / (√π Γ(1-s)), the constant for which c_1 H
/// gives the operator with eigenvalues k^{2s} on cos(kx), sin(kx).
double normalization_constant(FracOrder s);

/// Normalized kernel c_1 H_T at the nonzero offsets z_j = jT/n, j = 1..n-1.
struct KernelTable {
  FracOrder s;
  double period;
  int n_pts;
  double normalization;
  std::vector<double> nodes;
  std::vector<double> h_values;
  std::vector<double> err_bounds;
  double tail_bound;
};

/// Requires n_pts >= 4 and period > 0.
KernelTable build_table(FracOrder s, int n_pts, double period = kTwoPi);

/// CSV with columns z,H,err_bound.
std::string table_csv(const KernelTable& table);

}  // namespace fraclap
