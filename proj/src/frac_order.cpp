#include "fraclap/frac_order.hpp"

#include "fraclap/errors.hpp"

#include <cmath>

namespace fraclap {

FracOrder::FracOrder(double s) : s_(s) {
  if (!(std::isfinite(s) && s > 0.0 && s < 1.0))
    throw PreconditionError("fracspace", "fractional order must satisfy 0 < s < 1");
}

}  // namespace fraclap
