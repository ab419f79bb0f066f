#pragma once

#include "fspde/fbm.hpp"
#include "fspde/grid.hpp"

namespace fspde {

/// Pathwise fractional Ornstein-Uhlenbeck construction
///   u(t) = u0 e^{-mu t} + w(t) - mu * int_0^t e^{-mu(t-s)} w(s) ds,
/// with the convolution advanced by an exponential-integrator step using
/// linear interpolation of w. Deterministic given the input path.
ModePath fou_from_fbm(double mu, double u0, const FbmPath& fbm, std::size_t mode = 1);

/// E u^2(t) for the zero-initial-condition fOU mode with drift mu > 0.
/// H = 1/2 uses (1 - e^{-2 mu t}) / (2 mu); H > 1/2 integrates
/// H(2H-1) e^{-2 mu t} |s1-s2|^{2H-2} e^{mu(s1+s2)} over the triangle
/// s1 < s2 (adaptive quadrature after de-singularizing substitutions).
double fou_variance_exact(double mu, Hurst H, double t);

/// c(H)/mu^{2H} with c(H) = H * Gamma(2H)  ( = H(2H-1)Gamma(2H-1) for H > 1/2 ).
double stationary_limit(double mu, Hurst H);

/// c(H) itself; the removable singularity at H = 1/2 is already removed.
double ergodic_constant(Hurst H);

}  // namespace fspde
