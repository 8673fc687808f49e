#include "fraclap/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace fraclap::fft {
namespace {

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~Plans() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(int n) {
  static std::map<int, std::unique_ptr<Plans>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  auto plans = std::make_unique<Plans>();
  std::vector<double> real(static_cast<size_t>(n));
  std::vector<std::complex<double>> cplx(static_cast<size_t>(n / 2 + 1));
  auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans->r2c = fftw_plan_dft_r2c_1d(n, real.data(), c, flags);
  plans->c2r = fftw_plan_dft_c2r_1d(n, c, real.data(), flags);
  if (!plans->r2c || !plans->c2r) throw std::runtime_error("fftw planning failed");
  return *cache.emplace(n, std::move(plans)).first->second;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const double> in) {
  const int n = static_cast<int>(in.size());
  std::vector<double> buf(in.begin(), in.end());
  std::vector<std::complex<double>> out(static_cast<size_t>(n / 2 + 1));
  fftw_execute_dft_r2c(plans_for(n).r2c, buf.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> inverse(std::span<const std::complex<double>> spectrum, int n) {
  if (spectrum.size() != static_cast<size_t>(n / 2 + 1))
    throw std::invalid_argument("fft::inverse: spectrum size must be n/2+1");
  // c2r overwrites its input.
  std::vector<std::complex<double>> buf(spectrum.begin(), spectrum.end());
  std::vector<double> out(static_cast<size_t>(n));
  fftw_execute_dft_c2r(plans_for(n).c2r, reinterpret_cast<fftw_complex*>(buf.data()), out.data());
  return out;
}

}  // namespace fraclap::fft
