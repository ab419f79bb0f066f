#include "fspde/fou.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "fspde/special.hpp"

namespace fspde {

namespace {

// Adaptive Simpson with absolute tolerance.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

ModePath fou_from_fbm(double mu, double u0, const FbmPath& fbm, std::size_t mode) {
    const std::size_t n = fbm.grid.n;
    const double dt = fbm.grid.dt();
    const double z = mu * dt;

    // phi1 = (1-e^{-z})/z, phi2 = (1-phi1)/z; series near z = 0
    double phi1, phi2;
    if (std::fabs(z) < 1e-5) {
        phi1 = 1.0 - z / 2.0 + z * z / 6.0;
        phi2 = 0.5 - z / 6.0 + z * z / 24.0;
    } else {
        phi1 = -std::expm1(-z) / z;
        phi2 = (1.0 - phi1) / z;
    }
    const double decay = std::exp(-z);

    ModePath out;
    out.grid = fbm.grid;
    out.mode = mode;
    out.mu = mu;
    out.u0 = u0;
    out.u.assign(n + 1, 0.0);
    out.u[0] = u0;

    double conv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = fbm.w[i];
        const double dw = fbm.w[i + 1] - fbm.w[i];
        conv = decay * conv + dt * (wi * phi1 + dw * phi2);
        out.u[i + 1] = u0 * std::exp(-mu * static_cast<double>(i + 1) * dt) + fbm.w[i + 1] - mu * conv;
    }
    return out;
}

double fou_variance_exact(double mu, Hurst H, double t) {
    if (!(mu > 0.0)) throw std::invalid_argument("fou_variance_exact: mu must be positive");
    if (!(t > 0.0)) return 0.0;
    const double h = H.value();
    if (H.is_half()) return -std::expm1(-2.0 * mu * t) / (2.0 * mu);

    // inner K(s) = int_0^s e^{-mu x} x^{2H-2} dx, de-singularized by xi = x^{2H-1}
    const double b = 2.0 * h - 1.0;
    auto K = [&](double s) {
        if (s <= 0.0) return 0.0;
        auto g = [&](double xi) { return std::exp(-mu * std::pow(xi, 1.0 / b)); };
        const double upper = std::pow(s, b);
        return integrate(g, 0.0, upper, 1e-12 * (1.0 + upper)) / b;
    };
    // E u^2 = 2H(2H-1)/mu * int_0^{mu t} e^{-2y} K(t - y/mu) dy
    const double ymax = std::min(mu * t, 50.0);
    auto outer = [&](double y) { return std::exp(-2.0 * y) * K(t - y / mu); };
    const double integral = integrate(outer, 0.0, ymax, 1e-13);
    return 2.0 * h * b / mu * integral;
}

double ergodic_constant(Hurst H) { return H.value() * special::gamma_fn(2.0 * H.value()); }

double stationary_limit(double mu, Hurst H) {
    if (!(mu > 0.0)) throw std::invalid_argument("stationary_limit: mu must be positive");
    return ergodic_constant(H) * std::pow(mu, -2.0 * H.value());
}

}  // namespace fspde
