#include "fraclap/exponents.hpp"

#include "fraclap/errors.hpp"

#include <cmath>
#include <limits>

namespace fraclap {
namespace {

constexpr const char* kModule = "fracspace";
constexpr double kRelTol = 1e-12;

}  // namespace

double critical_exponent(FracOrder s) {
  if (s.value() >= 0.5) return std::numeric_limits<double>::infinity();
  return 2.0 / (1.0 - s.two_s());
}

double growth_exponent_bound(FracOrder s) {
  if (s.value() >= 0.5) return std::numeric_limits<double>::infinity();
  return (1.0 + s.two_s()) / (1.0 - s.two_s());
}

bool is_subcritical(FracOrder s, double p) {
  if (!(p > 1.0)) throw PreconditionError(kModule, "growth exponent must satisfy p > 1");
  return s.value() >= 0.5 || p < growth_exponent_bound(s);
}

ExponentChain bootstrap_chain(FracOrder s, double p) {
  return bootstrap_chain(s, p, critical_exponent(s));
}

ExponentChain bootstrap_chain(FracOrder s, double p, double q0) {
  if (!(s.value() < 0.5)) throw PreconditionError(kModule, "exponent chain requires s < 1/2");
  if (!(p > 1.0)) throw PreconditionError(kModule, "growth exponent must satisfy p > 1");
  if (!(q0 > 0.0) || !std::isfinite(q0)) throw PreconditionError(kModule, "q0 must be positive and finite");

  ExponentChain out{s, p, {q0}, ChainOutcome::kNonTerminating};
  const double bound = 1.0 / s.two_s();
  double q = q0;
  for (int step = 0; step < kChainStepCap; ++step) {
    const double ratio = q / p;
    if (std::abs(ratio - bound) <= kRelTol * bound) {
      out.outcome = ChainOutcome::kExactThreshold;
      return out;
    }
    // ratio > bound is the same condition as p - 2 q s < 0.
    if (ratio > bound) {
      out.outcome = ChainOutcome::kReachedBound;
      return out;
    }
    const double next = q / (p - s.two_s() * q);
    if (!(next > q * (1.0 + kRelTol))) return out;
    out.chain.push_back(next);
    q = next;
  }
  return out;
}

}  // namespace fraclap
