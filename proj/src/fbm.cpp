#include "fspde/fbm.hpp"

#include <cmath>
#include <stdexcept>

#include "fspde/fft.hpp"
#include "fspde/rng.hpp"

namespace fspde {

namespace {

// Autocovariance of unit-spacing fractional Gaussian noise, scaled by dt^{2H}.
double fgn_gamma(double H, double dt, std::size_t k) {
    const double kk = static_cast<double>(k);
    const double twoH = 2.0 * H;
    return 0.5 * std::pow(dt, twoH) *
           (std::pow(kk + 1.0, twoH) - 2.0 * std::pow(kk, twoH) +
            std::pow(std::fabs(kk - 1.0), twoH));
}

}  // namespace

double fbm_covariance(Hurst H, double t, double s) {
    if (t < 0.0 || s < 0.0) throw std::invalid_argument("fbm_covariance: negative time");
    const double twoH = 2.0 * H.value();
    return 0.5 * (std::pow(t, twoH) + std::pow(s, twoH) - std::pow(std::fabs(t - s), twoH));
}

FbmSampler::FbmSampler(Hurst H, const TimeGrid& grid, bool force_cholesky)
    : H_(H), grid_(grid) {
    const std::size_t n = grid.n;
    if (!force_cholesky) {
        padded_ = fft::next_pow2(n);
        const std::size_t m = 2 * padded_;
        std::vector<std::complex<double>> row(m);
        for (std::size_t k = 0; k <= padded_; ++k) row[k] = fgn_gamma(H.value(), grid.dt(), k);
        for (std::size_t k = padded_ + 1; k < m; ++k) row[k] = row[m - k];
        fft::transform(row, false);
        double lam_max = 0.0, lam_min = 0.0;
        for (auto& c : row) {
            lam_max = std::max(lam_max, c.real());
            lam_min = std::min(lam_min, c.real());
        }
        if (lam_min > -1e-10 * lam_max) {
            sqrt_eig_.resize(m);
            for (std::size_t k = 0; k < m; ++k)
                sqrt_eig_[k] = std::sqrt(std::max(0.0, row[k].real()));
            return;
        }
        // fall through to Cholesky
    }

    // Dense Cholesky of the path covariance (t_1..t_n, the origin is pinned).
    std::vector<double> cov(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            cov[i * n + j] = fbm_covariance(H_, grid_.t(i + 1), grid_.t(j + 1));
    chol_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = cov[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= chol_[i * n + k] * chol_[j * n + k];
            if (i == j) {
                if (s <= 0.0)
                    throw std::runtime_error("FbmSampler: covariance not positive definite");
                chol_[i * n + i] = std::sqrt(s);
            } else {
                chol_[i * n + j] = s / chol_[j * n + j];
            }
        }
    }
}

FbmPath FbmSampler::sample(std::uint64_t stream) const {
    const std::size_t n = grid_.n;
    FbmPath path;
    path.grid = grid_;
    path.H = H_.value();
    path.stream = stream;
    path.w.assign(n + 1, 0.0);
    NormalStream gauss(stream);

    if (!chol_.empty()) {
        std::vector<double> z(n);
        for (auto& v : z) v = gauss();
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k <= i; ++k) s += chol_[i * n + k] * z[k];
            path.w[i + 1] = s;
        }
        return path;
    }

    const std::size_t m = sqrt_eig_.size();
    const std::size_t half = m / 2;
    std::vector<std::complex<double>> v(m);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    v[0] = sqrt_eig_[0] * gauss();
    v[half] = sqrt_eig_[half] * gauss();
    for (std::size_t k = 1; k < half; ++k) {
        const double a = gauss(), b = gauss();
        v[k] = sqrt_eig_[k] * std::complex<double>(a * inv_sqrt2, b * inv_sqrt2);
        v[m - k] = std::conj(v[k]);
    }
    fft::transform(v, false);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += v[i].real() * scale;
        path.w[i + 1] = acc;
    }
    return path;
}

FbmPath sample_fbm(Hurst H, const TimeGrid& grid, std::uint64_t stream) {
    return FbmSampler(H, grid).sample(stream);
}

std::uint64_t fbm_mode_stream(std::uint64_t base_seed, std::size_t mode,
                              std::uint64_t replication) {
    return derive_stream(base_seed, static_cast<std::uint64_t>(mode), replication);
}

std::vector<FbmPath> sample_fbm_ensemble(Hurst H, const TimeGrid& grid, std::size_t N,
                                         std::uint64_t base_seed) {
    FbmSampler sampler(H, grid);
    std::vector<FbmPath> out;
    out.reserve(N);
    for (std::size_t j = 1; j <= N; ++j)
        out.push_back(sampler.sample(fbm_mode_stream(base_seed, j)));
    return out;
}

}  // namespace fspde
