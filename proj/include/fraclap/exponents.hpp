#pragma once

#include "fraclap/frac_order.hpp"

#include <vector>

namespace fraclap {

/// 2/(1-2s) for s < 1/2, +infinity otherwise.
double critical_exponent(FracOrder s);

/// Upper bound (1+2s)/(1-2s) on the growth exponent, +infinity for s >= 1/2.
double growth_exponent_bound(FracOrder s);

/// True iff s >= 1/2 or p < (1+2s)/(1-2s). Requires p > 1.
bool is_subcritical(FracOrder s, double p);

enum class ChainOutcome {
  /// Some q_j/p exceeded 1/(2s); the next step would have a nonpositive denominator.
  kReachedBound,
  /// q_j/p equals 1/(2s) up to relative round-off.
  kExactThreshold,
  /// The recursion stopped increasing or hit the step cap.
  kNonTerminating,
};

/// Integrability exponents q_{j+1} = q_j / (p - 2 q_j s).
struct ExponentChain {
  FracOrder s;
  double p;
  std::vector<double> chain;
  ChainOutcome outcome;

  bool terminated() const noexcept { return outcome != ChainOutcome::kNonTerminating; }
  bool threshold() const noexcept { return outcome == ChainOutcome::kExactThreshold; }
};

inline constexpr int kChainStepCap = 1000;

/// Iterates the exponent recursion from q0 (default: critical_exponent(s)).
/// Requires s < 1/2, p > 1 and q0 > 0.
ExponentChain bootstrap_chain(FracOrder s, double p);
ExponentChain bootstrap_chain(FracOrder s, double p, double q0);

}  // namespace fraclap
