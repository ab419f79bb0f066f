#pragma once

#include <cstddef>
#include <vector>

#include "fspde/grid.hpp"

namespace fspde::laplace {

// Closed-form Laplace transform of int_0^T Q^2 dw_H and its ingredients.
struct LaplaceEval {
    double a;
    double mu;
    double H;
    double T;
    double alpha;  // sqrt(mu^2 + 2a)
    double delta;  // Delta_T^H(mu, alpha)
    double psi;    // Psi_T^H(a, mu)
};

/// Delta_T^H(mu, alpha); evaluated with the e^{-alpha T} factors distributed
/// analytically so nothing overflows for large mu*T.
double delta_T(double mu, double alpha, Hurst H, double T);

/// Psi_T^H(a, mu) = alpha e^{(mu-alpha)T/2} Delta^{-1/2}; log-space product.
LaplaceEval psi(double a, double mu, Hurst H, double T);

/// E int_0^T Q^2 dw_H = -dPsi/da at a=0, closed form with e^{mu T} cancelled.
double mean_energy(double mu, Hurst H, double T);

/// Var int_0^T Q^2 dw_H from the closed-form second derivative at a=0.
double var_energy(double mu, Hurst H, double T);

enum class Lemma { A1, A2 };

struct LemmaRow {
    double mu;
    double scaled;   // mu * mean_energy  or  mu^3 * var_energy
    double abs_err;  // |scaled - T/2|
};

struct LemmaTable {
    Lemma which;
    double H;
    double T;
    std::vector<LemmaRow> rows;
    bool monotone_approach;  // |err| non-increasing along the mu sequence
};

/// Scaled-limit table for Lemma A.1 (mu E -> T/2) or A.2 (mu^3 Var -> T/2).
LemmaTable lemma_limit_check(Lemma which, Hurst H, double T,
                             const std::vector<double>& mu_sequence);

}  // namespace fspde::laplace
