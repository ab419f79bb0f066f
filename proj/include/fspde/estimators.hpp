#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fspde/grid.hpp"
#include "fspde/spectral_model.hpp"
#include "fspde/transform.hpp"

namespace fspde {

struct EstimateResult {
    double theta_hat = 0.0;
    std::size_t N = 0;            // number of modes used
    double numerator = 0.0;       // sum_j nu_j (S1_j + rho_j S2_j)
    double denominator = 0.0;     // sum_j nu_j^2 S2_j
    double fisher_I_N = std::numeric_limits<double>::quiet_NaN();
    double normalized_error = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> S1;       // per-mode int Q dZ
    std::vector<double> S2;       // per-mode int Q^2 dw_H
};

// Discrete Ito sums for one transformed mode. Increments over [t_l, t_{l+1}]
// are paired with the latest Q index measurable at t_l (q_lag handles the
// one-step reach of the centred difference quotient).
struct ModeSums {
    double S1 = 0.0;  // int Q dZ
    double S2 = 0.0;  // int Q^2 dw_H
    double SM = 0.0;  // int Q dM, when M is available
    bool has_SM = false;
};
ModeSums mode_sums(const TransformedMode& tm);

/// Spectral MLE from the first N transformed modes (modes carry their index).
/// theta_true, when given, fills fisher_I_N and normalized_error.
EstimateResult mle(std::span<const TransformedMode> modes, const SpectralModel& model,
                   std::optional<double> theta_true = std::nullopt);

/// H = 1/2 form: left-point sums directly on the paths, no transforms.
EstimateResult mle_white(std::span<const ModePath> modes, const SpectralModel& model,
                         Hurst H, std::optional<double> theta_true = std::nullopt);

/// Girsanov log-likelihood at theta (same discrete sums as mle); exactly
/// quadratic in theta.
double log_likelihood(double theta, std::span<const TransformedMode> modes,
                      const SpectralModel& model);

/// sqrt(I_N) (theta_hat - theta_true); requires fisher_I_N to be present.
double normalized_error(const EstimateResult& result, double theta_true);

/// Single-mode long-time estimator (the mle formula restricted to one mode).
double longtime_single_mode(const TransformedMode& mode, double rho, double nu);

/// Moment estimator inverting the ergodic average of u^2.
double ergodic_single_mode(const ModePath& u, double rho, double nu, Hurst H);

struct ErgodicAllModesResult {
    double theta_tilde = 0.0;
    std::size_t truncation_J = 0;
    double tail_bound = 0.0;  // estimated tail of sum nu_j^{-2H} beyond J
};

/// All-mode ergodic estimator; requires rho_j = 0 and nu_j > 0. Both series
/// are truncated at the number of supplied modes.
ErgodicAllModesResult ergodic_all_modes(std::span<const ModePath> modes,
                                        const SpectralModel& model, Hurst H);

/// Exact recovery from a degenerate mode:
/// theta = ln(u_s/u_t) / (nu (t-s)) - rho/nu.
double degenerate_exact(double u_s, double u_t, double s, double t, double rho, double nu);

}  // namespace fspde
