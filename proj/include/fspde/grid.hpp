#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fspde {

// Hurst parameter. The estimation theory implemented here needs H >= 1/2;
// values below 1/2 are rejected outright (the H(2H-1)|s1-s2|^{2H-2} kernels
// downstream change sign there).
class Hurst {
  public:
    explicit Hurst(double h) : value_(h) {
        if (!(h >= 0.5 && h < 1.0))
            throw std::invalid_argument("Hurst: H must lie in [1/2, 1)");
    }
    double value() const { return value_; }
    bool is_half() const { return value_ == 0.5; }

  private:
    double value_;
};

// Uniform observation grid t_i = i*T/n, i = 0..n.
struct TimeGrid {
    double T = 1.0;
    std::size_t n = 2;

    TimeGrid() = default;
    TimeGrid(double horizon, std::size_t steps) : T(horizon), n(steps) {
        if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: T must be positive");
        if (n < 2) throw std::invalid_argument("TimeGrid: need at least 2 steps");
    }
    double dt() const { return T / static_cast<double>(n); }
    double t(std::size_t i) const { return T * static_cast<double>(i) / static_cast<double>(n); }

    bool operator==(const TimeGrid& o) const { return T == o.T && n == o.n; }
};

// One sampled fractional Brownian motion path, w(t_0) = 0.
struct FbmPath {
    TimeGrid grid;
    double H = 0.5;
    std::uint64_t stream = 0;
    std::vector<double> w;  // size n+1
};

// One Fourier-mode trajectory u_j(t_i).
struct ModePath {
    TimeGrid grid;
    std::size_t mode = 1;  // 1-based index j
    double mu = 0.0;       // drift eigenvalue mu_j(theta)
    double u0 = 0.0;
    std::vector<double> u;  // size n+1
};

}  // namespace fspde
