#include "fraclap/nonlinearity.hpp"

#include "fraclap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fraclap {
namespace {

constexpr const char* kModule = "continuation";

double sign(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

void require_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw PreconditionError(kModule, "power nonlinearity needs p > 1");
}

}  // namespace

Nonlinearity power_odd(double p) {
  require_exponent(p);
  return {"odd:" + std::to_string(p), [p](double t) { return std::pow(std::abs(t), p - 1.0) * t; },
          [p](double t) { return p * std::pow(std::abs(t), p - 1.0); },
          [p](double t) { return std::pow(std::abs(t), p + 1.0) / (p + 1.0); }};
}

Nonlinearity power_even(double p) {
  require_exponent(p);
  return {"even:" + std::to_string(p), [p](double t) { return std::pow(std::abs(t), p); },
          [p](double t) { return p * std::pow(std::abs(t), p - 1.0) * sign(t); },
          [p](double t) { return sign(t) * std::pow(std::abs(t), p + 1.0) / (p + 1.0); }};
}

Nonlinearity monomial(int n) {
  if (n < 2) throw PreconditionError(kModule, "monomial degree must be at least 2");
  return {"u" + std::to_string(n), [n](double t) { return std::pow(t, n); },
          [n](double t) { return n * std::pow(t, n - 1); },
          [n](double t) { return std::pow(t, n + 1) / (n + 1); }};
}

Nonlinearity polynomial(std::vector<double> c) {
  if (c.empty()) throw PreconditionError(kModule, "polynomial needs at least one coefficient");
  auto value = [c](double t) {
    double acc = 0.0;
    for (size_t m = c.size(); m-- > 0;) acc = acc * t + c[m];
    return acc * t * t;
  };
  auto derivative = [c](double t) {
    double acc = 0.0;
    for (size_t m = c.size(); m-- > 0;) acc = acc * t + c[m] * static_cast<double>(m + 2);
    return acc * t;
  };
  auto primitive = [c](double t) {
    double acc = 0.0;
    for (size_t m = c.size(); m-- > 0;) acc = acc * t + c[m] / static_cast<double>(m + 3);
    return acc * t * t * t;
  };
  return {"polynomial", value, derivative, primitive};
}

Nonlinearity zero_nonlinearity() {
  return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

Nonlinearity nonlinearity_from_name(const std::string& name) {
  if (name == "u2") return monomial(2);
  if (name == "u3") return monomial(3);
  if (name == "zero") return zero_nonlinearity();
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string kind = name.substr(0, colon);
    double p = 0.0;
    try {
      p = std::stod(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw PreconditionError(kModule, "cannot parse exponent in nonlinearity '" + name + "'");
    }
    if (kind == "odd") return power_odd(p);
    if (kind == "even") return power_even(p);
  }
  throw PreconditionError(kModule, "unknown nonlinearity '" + name + "' (expected u2, u3, zero, odd:<p>, even:<p>)");
}

double TruncatedNonlinearity::value(double t) const {
  if (t > 1.0) return base.value(1.0) + base.derivative(1.0) * (t - 1.0);
  if (t < -1.0) return base.value(-1.0) + base.derivative(-1.0) * (t + 1.0);
  return base.value(t);
}

double TruncatedNonlinearity::derivative(double t) const { return base.derivative(std::clamp(t, -1.0, 1.0)); }

Nonlinearity TruncatedNonlinearity::as_nonlinearity() const {
  const TruncatedNonlinearity self = *this;
  auto primitive = [self](double t) {
    if (t > 1.0) {
      const double d = t - 1.0;
      return self.base.primitive(1.0) + self.base.value(1.0) * d + 0.5 * self.base.derivative(1.0) * d * d;
    }
    if (t < -1.0) {
      const double d = t + 1.0;
      return self.base.primitive(-1.0) + self.base.value(-1.0) * d + 0.5 * self.base.derivative(-1.0) * d * d;
    }
    return self.base.primitive(t);
  };
  return {base.name + " truncated", [self](double t) { return self.value(t); },
          [self](double t) { return self.derivative(t); }, primitive};
}

TruncatedNonlinearity truncate_nonlinearity(const Nonlinearity& f) {
  if (std::abs(f.derivative(0.0)) > 1e-12)
    throw PreconditionError(kModule, "truncation requires f'(0) = 0");
  if (std::abs(f.value(0.0)) > 1e-12) throw PreconditionError(kModule, "truncation requires f(0) = 0");
  double c = std::max({std::abs(f.value(1.0)), std::abs(f.value(-1.0)), std::abs(f.derivative(1.0)),
                       std::abs(f.derivative(-1.0))});
  constexpr int kSamples = 4000;
  for (int i = 1; i <= kSamples; ++i) {
    const double t = static_cast<double>(i) / kSamples;
    c = std::max({c, std::abs(f.value(t)) / t, std::abs(f.value(-t)) / t});
  }
  return {f, c};
}

}  // namespace fraclap
