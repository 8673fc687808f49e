#include "fraclap/field.hpp"

#include "fraclap/errors.hpp"
#include "fraclap/fft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>

namespace fraclap {
namespace {

constexpr const char* kModule = "fracspace";

void require_modes(int n_modes) {
  if (n_modes < 0) throw PreconditionError(kModule, "n_modes must be nonnegative");
}

}  // namespace

SpectralField::SpectralField(int n_modes) {
  require_modes(n_modes);
  a_.assign(static_cast<size_t>(n_modes + 1), 0.0);
  b_.assign(static_cast<size_t>(n_modes + 1), 0.0);
}

SpectralField::SpectralField(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw PreconditionError(kModule, "cosine coefficients must include a_0");
  if (b_.size() + 1 == a_.size()) b_.insert(b_.begin(), 0.0);
  if (b_.size() != a_.size())
    throw PreconditionError(kModule, "sine coefficients must have n_modes or n_modes+1 entries");
  if (b_[0] != 0.0) throw PreconditionError(kModule, "b_0 must be zero");
  if (!is_finite()) throw PreconditionError(kModule, "coefficients must be finite");
}

SpectralField SpectralField::constant(int n_modes, double value) {
  SpectralField u(n_modes);
  u.a_[0] = 2.0 * value;
  return u;
}

SpectralField SpectralField::cosine(int n_modes, int k, double amplitude) {
  if (k < 0 || k > n_modes) throw PreconditionError(kModule, "mode index out of range");
  SpectralField u(n_modes);
  u.a_[static_cast<size_t>(k)] = k == 0 ? 2.0 * amplitude : amplitude;
  return u;
}

SpectralField SpectralField::sine(int n_modes, int k, double amplitude) {
  if (k < 1 || k > n_modes) throw PreconditionError(kModule, "sine mode index must be in 1..n_modes");
  SpectralField u(n_modes);
  u.b_[static_cast<size_t>(k)] = amplitude;
  return u;
}

double& SpectralField::b(int j) { return b_.at(static_cast<size_t>(j)); }

double SpectralField::operator()(double x) const {
  double sum = 0.5 * a_[0];
  for (int j = 1; j <= n_modes(); ++j) sum += a_[j] * std::cos(j * x) + b_[j] * std::sin(j * x);
  return sum;
}

SpectralField SpectralField::shifted(double tau) const {
  SpectralField out(n_modes());
  out.a_[0] = a_[0];
  for (int j = 1; j <= n_modes(); ++j) {
    const double c = std::cos(j * tau), s = std::sin(j * tau);
    out.a_[j] = a_[j] * c + b_[j] * s;
    out.b_[j] = b_[j] * c - a_[j] * s;
  }
  return out;
}

SpectralField SpectralField::derivative() const {
  SpectralField out(n_modes());
  for (int j = 1; j <= n_modes(); ++j) {
    out.a_[j] = j * b_[j];
    out.b_[j] = -j * a_[j];
  }
  return out;
}

SpectralField SpectralField::resized(int n) const {
  SpectralField out(n);
  const int m = std::min(n, n_modes());
  std::copy_n(a_.begin(), m + 1, out.a_.begin());
  std::copy_n(b_.begin(), m + 1, out.b_.begin());
  return out;
}

bool SpectralField::is_finite() const noexcept {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(a_.begin(), a_.end(), finite) && std::all_of(b_.begin(), b_.end(), finite);
}

bool SpectralField::is_even(double tol) const noexcept {
  return std::all_of(b_.begin() + 1, b_.end(), [tol](double v) { return std::abs(v) <= tol; });
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.n_modes() != n_modes()) throw PreconditionError(kModule, "mode-count mismatch");
  for (size_t j = 0; j < a_.size(); ++j) {
    a_[j] += other.a_[j];
    b_[j] += other.b_[j];
  }
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (other.n_modes() != n_modes()) throw PreconditionError(kModule, "mode-count mismatch");
  for (size_t j = 0; j < a_.size(); ++j) {
    a_[j] -= other.a_[j];
    b_[j] -= other.b_[j];
  }
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (size_t j = 0; j < a_.size(); ++j) {
    a_[j] *= c;
    b_[j] *= c;
  }
  return *this;
}

double max_coeff_diff(const SpectralField& u, const SpectralField& v) {
  const int n = std::max(u.n_modes(), v.n_modes());
  const SpectralField uu = u.resized(n), vv = v.resized(n);
  double d = 0.0;
  for (int j = 0; j <= n; ++j) {
    d = std::max(d, std::abs(uu.a(j) - vv.a(j)));
    if (j > 0) d = std::max(d, std::abs(uu.b(j) - vv.b(j)));
  }
  return d;
}

bool is_power_of_two(int n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

int next_power_of_two(int n) noexcept {
  int p = 4;
  while (p < n) p *= 2;
  return p;
}

GridField::GridField(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 4 || !is_power_of_two(static_cast<int>(values_.size())))
    throw PreconditionError(kModule, "grid size must be a power of two and at least 4");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); }))
    throw PreconditionError(kModule, "grid values must be finite");
}

double GridField::spacing() const noexcept { return kTwoPi / static_cast<double>(values_.size()); }

double GridField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridField::max() const { return *std::max_element(values_.begin(), values_.end()); }

GridField to_grid(const SpectralField& u, int n_pts) {
  const int n_modes = u.n_modes();
  if (n_pts < 2 * n_modes + 2)
    throw PreconditionError(kModule, "undersampling: n_pts must be at least 2 n_modes + 2");
  if (!is_power_of_two(n_pts) || n_pts < 4)
    throw PreconditionError(kModule, "grid size must be a power of two and at least 4");
  std::vector<std::complex<double>> coeffs(static_cast<size_t>(n_pts / 2 + 1));
  coeffs[0] = 0.5 * u.a(0);
  for (int j = 1; j <= n_modes; ++j) coeffs[j] = 0.5 * std::complex<double>(u.a(j), -u.b(j));
  return GridField(fft::inverse(coeffs, n_pts));
}

SpectralField from_grid(const GridField& g, int n_modes) {
  const int n = g.n_pts();
  if (n < 2 * n_modes + 2)
    throw PreconditionError(kModule, "undersampling: n_pts must be at least 2 n_modes + 2");
  const auto coeffs = fft::forward(g.values());
  SpectralField u(n_modes);
  const double scale = 2.0 / n;
  u.a(0) = scale * coeffs[0].real();
  for (int j = 1; j <= n_modes; ++j) {
    u.a(j) = scale * coeffs[j].real();
    u.b(j) = -scale * coeffs[j].imag();
  }
  return u;
}

double PeriodicProfile::operator()(double x) const { return shape(wavenumber() * x); }

double PeriodicProfile::wavenumber() const noexcept { return kTwoPi / period; }

nlohmann::json to_json(const SpectralField& u) {
  const auto a = u.cos_coeffs();
  const auto b = u.sin_coeffs();
  return {{"n_modes", u.n_modes()},
          {"a", std::vector<double>(a.begin(), a.end())},
          {"b", std::vector<double>(b.begin() + 1, b.end())}};
}

SpectralField field_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n_modes").get<int>();
    auto a = j.at("a").get<std::vector<double>>();
    auto b = j.at("b").get<std::vector<double>>();
    if (a.size() != static_cast<size_t>(n + 1) || b.size() != static_cast<size_t>(n))
      throw PreconditionError(kModule, "field JSON: expected n_modes+1 cosine and n_modes sine coefficients");
    return SpectralField(std::move(a), std::move(b));
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(kModule, std::string("field JSON: ") + e.what());
  }
}

std::string to_csv(const SpectralField& u, int n_pts, double period) {
  if (n_pts < 1) throw PreconditionError(kModule, "CSV needs at least one sample");
  std::ostringstream os;
  os << std::setprecision(17) << "x,u\n";
  const PeriodicProfile prof{u, period};
  for (int i = 0; i < n_pts; ++i) {
    const double x = period * i / n_pts;
    os << x << ',' << prof(x) << '\n';
  }
  return os.str();
}

}  // namespace fraclap
