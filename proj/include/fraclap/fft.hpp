#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fraclap::fft {

// Real <-> half-complex transforms backed by FFTW. Plans are created once per
// size under a lock and then executed on caller-owned buffers, so the
// functions below may be called concurrently.

/// out[j] = sum_k in[k] exp(-2 pi i j k / n), j = 0..n/2.
std::vector<std::complex<double>> forward(std::span<const double> in);

/// out[k] = sum_j Y_j exp(2 pi i j k / n) with Hermitian completion of Y
/// (unnormalized). `spectrum` must have n/2 + 1 entries.
std::vector<double> inverse(std::span<const std::complex<double>> spectrum, int n);

}  // namespace fraclap::fft
