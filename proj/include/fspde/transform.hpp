#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fspde/grid.hpp"

namespace fspde {

struct KernelConstants {
    double H;
    double kappa;   // kappa_H = 2H Gamma(3/2-H) Gamma(H+1/2)
    double lambda;  // lambda_H = 2H Gamma(3-2H) Gamma(H+1/2) / Gamma(3/2-H)
};

KernelConstants kernel_constants(Hurst H);

/// Deterministic clock w_H(t) = t^{2-2H} / lambda_H.
double clock_w(Hurst H, double t);

/// k_H(t,s) = kappa_H^{-1} s^{1/2-H} (t-s)^{1/2-H}, defined for 0 < s < t.
double kernel(Hurst H, double t, double s);

// Per-mode transformed processes on the observation grid. Q is the
// difference quotient of psi with respect to the clock, centred at t_i for
// interior i; `q_lag` records how far the centred value trails the data it
// uses, so stochastic left-point sums can pair increments with a
// non-anticipating Q value (see estimators.cpp).
struct TransformedMode {
    TimeGrid grid;
    std::size_t mode = 1;
    double H = 0.5;
    std::size_t q_lag = 0;
    std::vector<double> wclock;  // w_H(t_i)
    std::vector<double> psi;     // int_0^{t_i} k_H(t_i,s) u(s) ds
    std::vector<double> Q;
    std::vector<double> Z;       // int_0^{t_i} k_H(t_i,s) du(s)
    std::optional<std::vector<double>> M;  // int k_H dw, simulation mode only
};

struct TransformOptions {
    // Evaluate the quadrature path even at H = 1/2 (where the transforms
    // collapse to the identity and are otherwise short-circuited exactly).
    bool force_general = false;
};

/// Full per-mode transform; supply the driving fBM path to also get M.
TransformedMode transform_mode(const ModePath& u, Hurst H, const FbmPath* w = nullptr,
                               const TransformOptions& opt = {});

/// psi(t_i) for a single grid index (same product-integration weights as
/// transform_mode).
double weighted_integral_psi(const ModePath& u, Hurst H, std::size_t i);

/// Q on the whole grid.
std::vector<double> compute_Q(const ModePath& u, Hurst H, const TransformOptions& opt = {});

/// Z(t_i) for a single grid index.
double compute_Z(const ModePath& u, Hurst H, std::size_t i);

/// M on the whole grid from a driving fBM path.
std::vector<double> compute_M(const FbmPath& w, Hurst H, const TransformOptions& opt = {});

}  // namespace fspde
