#include "fraclap/kernel.hpp"

#include "fraclap/errors.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace fraclap {
namespace {

constexpr const char* kModule = "kernel";
constexpr long kMaxTerms = 1L << 20;

// B_2, B_4, ..., B_14.
constexpr std::array<double, 7> kBernoulli = {1.0 / 6,  -1.0 / 30, 1.0 / 42,      -1.0 / 30,
                                              5.0 / 66, -691.0 / 2730, 7.0 / 6};
constexpr int kEulerMaclaurinTerms = 6;

struct Partial {
  double value;
  double err_bound;
};

// sum_{m>=0} (m+q)^{-alpha}, direct to n_direct then Euler-Maclaurin.
Partial hurwitz(double alpha, double q, long n_direct) {
  // Neumaier summation keeps the round-off of the direct part at a few ulps.
  double sum = 0.0, comp = 0.0;
  for (long m = n_direct - 1; m >= 0; --m) {
    const double term = std::pow(static_cast<double>(m) + q, -alpha);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  sum += comp;
  const double x = static_cast<double>(n_direct) + q;
  double tail = std::pow(x, 1.0 - alpha) / (alpha - 1.0) + 0.5 * std::pow(x, -alpha);
  // poch = alpha (alpha+1) ... (alpha+2k-2), factorial = (2k)!.
  double poch = alpha, factorial = 2.0, next = 0.0;
  for (int k = 1; k <= kEulerMaclaurinTerms + 1; ++k) {
    const double term = kBernoulli[k - 1] / factorial * poch * std::pow(x, 1.0 - alpha - 2 * k);
    if (k <= kEulerMaclaurinTerms) tail += term;
    else next = std::abs(term);
    poch *= (alpha + 2 * k - 1) * (alpha + 2 * k);
    factorial *= (2 * k + 1) * (2 * k + 2);
  }
  const double total = sum + tail;
  const double roundoff = 8.0 * std::numeric_limits<double>::epsilon() * total;
  return {total, next + roundoff};
}

}  // namespace

KernelValue eval_H(double z, FracOrder s, double rel_tol) {
  if (!(z > 0.0 && z < kTwoPi)) throw PreconditionError(kModule, "kernel argument must satisfy 0 < z < 2π");
  if (!(rel_tol > 0.0)) throw PreconditionError(kModule, "rel_tol must be positive");
  const double alpha = s.kernel_exponent();
  const double q = z / kTwoPi;
  const double scale = std::pow(kTwoPi, -alpha);
  for (long n = 4; n <= kMaxTerms; n *= 2) {
    const Partial left = hurwitz(alpha, q, n);
    const Partial right = hurwitz(alpha, 1.0 - q, n);
    const double value = scale * (left.value + right.value);
    const double err = scale * (left.err_bound + right.err_bound);
    if (err <= rel_tol * value) return {value, err};
  }
  throw ConvergenceError(kModule, "requested relative tolerance is unachievable at the term cap");
}

KernelValue eval_H_periodic(double z, FracOrder s, double period, double rel_tol) {
  if (!(period > 0.0)) throw PreconditionError(kModule, "period must be positive");
  if (!(z > 0.0 && z < period)) throw PreconditionError(kModule, "kernel argument must satisfy 0 < z < T");
  const double factor = std::pow(kTwoPi / period, s.kernel_exponent());
  const KernelValue h = eval_H(kTwoPi * z / period, s, rel_tol);
  return {factor * h.value, factor * h.err_bound};
}

KernelValue lattice_sum_direct(double z, FracOrder s, long n_terms) {
  if (!(z > 0.0 && z < kTwoPi)) throw PreconditionError(kModule, "kernel argument must satisfy 0 < z < 2π");
  if (n_terms < 1) throw PreconditionError(kModule, "need at least one lattice term per side");
  const double alpha = s.kernel_exponent();
  double sum = 0.0;
  for (long n = n_terms; n >= 1; --n) {
    sum += std::pow(kTwoPi * n - z, -alpha);
    sum += std::pow(kTwoPi * n + z, -alpha);
  }
  sum += std::pow(z, -alpha);
  const double mid = kTwoPi * (static_cast<double>(n_terms) + 0.5);
  const double tail = (std::pow(mid - z, 1.0 - alpha) + std::pow(mid + z, 1.0 - alpha)) / (kTwoPi * (alpha - 1.0));
  const double bound = 0.5 * (std::pow(mid - z, -alpha) + std::pow(mid + z, -alpha));
  return {sum + tail, bound};
}

double normalization_constant(FracOrder s) {
  const double sv = s.value();
  return std::pow(2.0, 2.0 * sv) * sv * std::tgamma(sv + 0.5) / (std::sqrt(std::numbers::pi) * std::tgamma(1.0 - sv));
}

KernelTable build_table(FracOrder s, int n_pts, double period) {
  if (n_pts < 4) throw PreconditionError(kModule, "kernel table needs n_pts >= 4");
  if (!(period > 0.0)) throw PreconditionError(kModule, "period must be positive");
  const double c1 = normalization_constant(s);
  const double h = period / n_pts;
  KernelTable t{s, period, n_pts, c1, {}, {}, {}, 0.0};
  t.nodes.resize(static_cast<size_t>(n_pts - 1));
  t.h_values.resize(t.nodes.size());
  t.err_bounds.resize(t.nodes.size());
  for (int j = 1; j <= n_pts / 2; ++j) {
    const KernelValue kv = eval_H_periodic(j * h, s, period);
    for (int idx : {j, n_pts - j}) {
      t.nodes[idx - 1] = idx * h;
      t.h_values[idx - 1] = c1 * kv.value;
      t.err_bounds[idx - 1] = c1 * kv.err_bound;
    }
    t.tail_bound = std::max(t.tail_bound, c1 * kv.err_bound);
  }
  return t;
}

std::string table_csv(const KernelTable& table) {
  std::ostringstream os;
  os << std::setprecision(17) << "z,H,err_bound\n";
  for (size_t i = 0; i < table.nodes.size(); ++i)
    os << table.nodes[i] << ',' << table.h_values[i] << ',' << table.err_bounds[i] << '\n';
  return os.str();
}

}  // namespace fraclap
