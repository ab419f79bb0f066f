#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fspde/grid.hpp"

namespace fspde {

/// fBM covariance: (t^{2H} + s^{2H} - |t-s|^{2H}) / 2.
double fbm_covariance(Hurst H, double t, double s);

/// Exact-in-distribution fBM sampler on a uniform grid. Default method is
/// circulant embedding of the increment covariance (O(n log n), grid padded
/// to a power of two internally); if the embedding turns out not to be
/// positive semi-definite the sampler falls back to a dense Cholesky factor
/// of the full path covariance.
class FbmSampler {
  public:
    FbmSampler(Hurst H, const TimeGrid& grid, bool force_cholesky = false);

    /// Deterministic function of the stream id; thread-safe.
    FbmPath sample(std::uint64_t stream) const;

    bool used_cholesky() const { return !chol_.empty(); }
    Hurst hurst() const { return H_; }
    const TimeGrid& grid() const { return grid_; }

  private:
    Hurst H_;
    TimeGrid grid_;
    std::vector<double> sqrt_eig_;  // circulant route, size 2*padded
    std::size_t padded_ = 0;
    std::vector<double> chol_;      // fallback: lower factor of path covariance, row-major
};

/// One-shot convenience wrapper around FbmSampler.
FbmPath sample_fbm(Hurst H, const TimeGrid& grid, std::uint64_t stream);

/// N mutually independent paths; the stream for mode j is derived from
/// (base_seed, j) so the ensemble does not depend on generation order.
std::vector<FbmPath> sample_fbm_ensemble(Hurst H, const TimeGrid& grid, std::size_t N,
                                         std::uint64_t base_seed);

std::uint64_t fbm_mode_stream(std::uint64_t base_seed, std::size_t mode,
                              std::uint64_t replication = 0);

}  // namespace fspde
