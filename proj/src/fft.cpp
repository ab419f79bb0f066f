#include "fspde/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace fspde::fft {

namespace {

// Twiddle factors for half-size n/2, shared between threads and calls.
std::shared_ptr<const std::vector<std::complex<double>>> twiddles(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const std::vector<std::complex<double>>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto tw = std::make_shared<std::vector<std::complex<double>>>(n / 2);
    const double step = -2.0 * M_PI / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        (*tw)[k] = std::polar(1.0, step * static_cast<double>(k));
    cache[n] = tw;
    return tw;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void transform(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: size must be a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    auto tw = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = (*tw)[k * stride];
                if (inverse) w = std::conj(w);
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<double> convolve(const std::vector<double>& x,
                             const std::vector<double>& y,
                             std::size_t out_len) {
    const std::size_t full = x.size() + y.size();
    const std::size_t m = next_pow2(full);
    std::vector<std::complex<double>> fx(m), fy(m);
    for (std::size_t i = 0; i < x.size(); ++i) fx[i] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) fy[i] = y[i];
    transform(fx, false);
    transform(fy, false);
    for (std::size_t i = 0; i < m; ++i) fx[i] *= fy[i];
    transform(fx, true);
    std::vector<double> out(out_len, 0.0);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < out_len && i < m; ++i) out[i] = fx[i].real() * scale;
    return out;
}

}  // namespace fspde::fft
