#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fspde::fft {

// In-place complex FFT; size must be a power of two.
// inverse=true applies the conjugate transform *without* the 1/n factor.
void transform(std::vector<std::complex<double>>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

// Linear convolution of two real sequences, truncated to `out_len` entries.
std::vector<double> convolve(const std::vector<double>& x,
                             const std::vector<double>& y,
                             std::size_t out_len);

}  // namespace fspde::fft
