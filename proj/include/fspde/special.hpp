#pragma once

namespace fspde::special {

/// Gamma function for x > 0 (Lanczos approximation, relative error ~1e-13).
double gamma_fn(double x);

/// Modified Bessel function of the first kind I_p(x), order p in (-1,1), x > 0.
/// Power series for x <= x_switch, uniform asymptotic expansion beyond.
double bessel_i(double p, double x);

/// exp(-x) * I_p(x), stable for large x.
double bessel_i_scaled(double p, double x);

/// Relative disagreement between the series and asymptotic branches at the
/// crossover point; the branches are accepted if this stays below 1e-9.
double bessel_branch_gap(double p);

double bessel_x_switch();

}  // namespace fspde::special
