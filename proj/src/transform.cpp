#include "fspde/transform.hpp"

#include <cmath>
#include <stdexcept>

#include "fspde/fft.hpp"
#include "fspde/special.hpp"

namespace fspde {

namespace {

// Number of leading/trailing panels given exact singular-factor weights, and
// the index below which whole weight rows are rebuilt panel by panel.
constexpr std::size_t kEdgePanels = 32;

// 8-point Gauss-Legendre on [0,1].
constexpr double kGlx[8] = {0.01985507175123188, 0.10166676129318664, 0.2372337950418355,
                            0.40828267875217505, 0.59171732124782495, 0.7627662049581645,
                            0.89833323870681336, 0.98014492824876812};
constexpr double kGlw[8] = {0.05061426814518813, 0.11119051722668724, 0.15685332293894364,
                            0.18134189168918099, 0.18134189168918099, 0.15685332293894364,
                            0.11119051722668724, 0.05061426814518813};

double gl_integral(double lo, double hi, const auto& f) {
    double s = 0.0;
    for (int k = 0; k < 8; ++k) s += kGlw[k] * f(lo + (hi - lo) * kGlx[k]);
    return (hi - lo) * s;
}

// int over [l, l+1] of x^a (i-x)^a dx, exact treatment of the singular ends.
double panel_weight(double a, std::size_t i, std::size_t l) {
    const double ii = static_cast<double>(i);
    if (i == 1) {  // single panel, both ends singular: Beta(1+a, 1+a)
        const double g = special::gamma_fn(1.0 + a);
        return g * g / special::gamma_fn(2.0 + 2.0 * a);
    }
    if (l == 0) {  // left singular end: xi = x^{1+a}
        const double p = 1.0 + a;
        return gl_integral(0.0, 1.0, [&](double xi) {
                   return std::pow(ii - std::pow(xi, 1.0 / p), a);
               }) / p;
    }
    if (l == i - 1) {  // right singular end: eta = (i-x)^{1+a}
        const double p = 1.0 + a;
        return gl_integral(0.0, 1.0, [&](double eta) {
                   return std::pow(ii - std::pow(eta, 1.0 / p), a);
               }) / p;
    }
    const double ll = static_cast<double>(l);
    return gl_integral(ll, ll + 1.0, [&](double x) {
        return std::pow(x, a) * std::pow(ii - x, a);
    });
}

// Unit-spacing weight row W_i[l], l = 0..i-1: midpoint product rule with the
// singular factor integrated exactly over the first/last kEdgePanels panels,
// and fully rebuilt rows for small i.
struct WeightTable {
    double a;
    std::size_t n;
    std::vector<double> P;  // (l+1/2)^a
    std::vector<double> A;  // P with exact x^a panel integrals at the edge

    WeightTable(double a_, std::size_t n_) : a(a_), n(n_), P(n_), A(n_) {
        for (std::size_t l = 0; l < n; ++l)
            P[l] = std::pow(static_cast<double>(l) + 0.5, a);
        A = P;
        const double p = 1.0 + a;
        for (std::size_t l = 0; l < std::min(kEdgePanels, n); ++l)
            A[l] = (std::pow(static_cast<double>(l + 1), p) -
                    std::pow(static_cast<double>(l), p)) / p;
    }

    std::vector<double> row(std::size_t i) const {
        std::vector<double> w(i);
        if (i <= 2 * kEdgePanels) {
            for (std::size_t l = 0; l < i; ++l) w[l] = panel_weight(a, i, l);
        } else {
            for (std::size_t l = 0; l < i; ++l) w[l] = A[l] * A[i - 1 - l];
        }
        return w;
    }
};

std::vector<double> midpoints_average(const std::vector<double>& u) {
    std::vector<double> v(u.size() - 1);
    for (std::size_t l = 0; l + 1 < u.size(); ++l) v[l] = 0.5 * (u[l] + u[l + 1]);
    return v;
}

std::vector<double> increments(const std::vector<double>& u) {
    std::vector<double> v(u.size() - 1);
    for (std::size_t l = 0; l + 1 < u.size(); ++l) v[l] = u[l + 1] - u[l];
    return v;
}

// S_i = prefactor * sum_{l<i} W_i[l] f_l for every i;  FFT for the product
// part, direct rebuilt rows for i <= 2*kEdgePanels.
std::vector<double> transform_all(const WeightTable& wt, const std::vector<double>& f,
                                  double prefactor) {
    const std::size_t n = wt.n;
    std::vector<double> af(n);
    for (std::size_t l = 0; l < n; ++l) af[l] = wt.A[l] * f[l];
    std::vector<double> conv = fft::convolve(af, wt.A, n);
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) out[i] = prefactor * conv[i - 1];
    const std::size_t small = std::min(n, 2 * kEdgePanels);
    for (std::size_t i = 1; i <= small; ++i) {
        const auto w = wt.row(i);
        double s = 0.0;
        for (std::size_t l = 0; l < i; ++l) s += w[l] * f[l];
        out[i] = prefactor * s;
    }
    return out;
}

std::vector<double> q_from_psi(const std::vector<double>& psi,
                               const std::vector<double>& wc) {
    const std::size_t n = psi.size() - 1;
    std::vector<double> Q(n + 1, 0.0);
    Q[1] = psi[1] / wc[1];
    for (std::size_t i = 2; i + 1 <= n; ++i)
        Q[i] = (psi[i + 1] - psi[i - 1]) / (wc[i + 1] - wc[i - 1]);
    Q[n] = (psi[n] - psi[n - 1]) / (wc[n] - wc[n - 1]);
    return Q;
}

}  // namespace

KernelConstants kernel_constants(Hurst H) {
    const double h = H.value();
    const double g1 = special::gamma_fn(1.5 - h);
    const double g2 = special::gamma_fn(h + 0.5);
    const double g3 = special::gamma_fn(3.0 - 2.0 * h);
    return {h, 2.0 * h * g1 * g2, 2.0 * h * g3 * g2 / g1};
}

double clock_w(Hurst H, double t) {
    if (t < 0.0) throw std::invalid_argument("clock_w: negative time");
    return std::pow(t, 2.0 - 2.0 * H.value()) / kernel_constants(H).lambda;
}

double kernel(Hurst H, double t, double s) {
    if (!(s > 0.0 && s < t)) throw std::invalid_argument("kernel: need 0 < s < t");
    const double a = 0.5 - H.value();
    return std::pow(s, a) * std::pow(t - s, a) / kernel_constants(H).kappa;
}

TransformedMode transform_mode(const ModePath& u, Hurst H, const FbmPath* w,
                               const TransformOptions& opt) {
    const std::size_t n = u.grid.n;
    if (n < 4) throw std::invalid_argument("transform_mode: grid too coarse");
    if (w && !(w->grid == u.grid))
        throw std::invalid_argument("transform_mode: u and w grids differ");

    TransformedMode tm;
    tm.grid = u.grid;
    tm.mode = u.mode;
    tm.H = H.value();
    tm.wclock.resize(n + 1);

    if (H.is_half() && !opt.force_general) {
        // k_H = 1 and w_H(t) = t: psi is the running integral, Q = Z' = u.
        for (std::size_t i = 0; i <= n; ++i) tm.wclock[i] = u.grid.t(i);
        tm.psi.assign(n + 1, 0.0);
        const double dt = u.grid.dt();
        for (std::size_t i = 1; i <= n; ++i)
            tm.psi[i] = tm.psi[i - 1] + 0.5 * dt * (u.u[i - 1] + u.u[i]);
        tm.Q = u.u;
        tm.Q[0] = 0.0;  // zero-initial-condition convention
        tm.Z.resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) tm.Z[i] = u.u[i] - u.u0;
        if (w) tm.M = w->w;
        tm.q_lag = 0;
        return tm;
    }

    const auto kc = kernel_constants(H);
    const double a = 0.5 - H.value();
    const double dt = u.grid.dt();
    for (std::size_t i = 0; i <= n; ++i)
        tm.wclock[i] = std::pow(u.grid.t(i), 2.0 - 2.0 * H.value()) / kc.lambda;

    const WeightTable wt(a, n);
    const double pre = std::pow(dt, 2.0 * a) / kc.kappa;
    tm.psi = transform_all(wt, midpoints_average(u.u), pre * dt);
    tm.Z = transform_all(wt, increments(u.u), pre);
    if (w) tm.M = transform_all(wt, increments(w->w), pre);
    tm.Q = q_from_psi(tm.psi, tm.wclock);
    // Q[i] is centred at t_i but reaches one step ahead through psi[i+1];
    // adapted stochastic sums must therefore lag it by one index.
    tm.q_lag = 1;
    return tm;
}

double weighted_integral_psi(const ModePath& u, Hurst H, std::size_t i) {
    const std::size_t n = u.grid.n;
    if (i < 1 || i > n) throw std::invalid_argument("weighted_integral_psi: bad index");
    if (H.is_half()) {
        double s = 0.0;
        for (std::size_t l = 0; l < i; ++l) s += 0.5 * (u.u[l] + u.u[l + 1]);
        return s * u.grid.dt();
    }
    const double a = 0.5 - H.value();
    const WeightTable wt(a, n);
    const auto row = wt.row(i);
    double s = 0.0;
    for (std::size_t l = 0; l < i; ++l) s += row[l] * 0.5 * (u.u[l] + u.u[l + 1]);
    const auto kc = kernel_constants(H);
    return s * std::pow(u.grid.dt(), 2.0 * a) * u.grid.dt() / kc.kappa;
}

std::vector<double> compute_Q(const ModePath& u, Hurst H, const TransformOptions& opt) {
    return transform_mode(u, H, nullptr, opt).Q;
}

double compute_Z(const ModePath& u, Hurst H, std::size_t i) {
    const std::size_t n = u.grid.n;
    if (i < 1 || i > n) throw std::invalid_argument("compute_Z: bad index");
    if (H.is_half()) return u.u[i] - u.u[0];
    const double a = 0.5 - H.value();
    const WeightTable wt(a, n);
    const auto row = wt.row(i);
    double s = 0.0;
    for (std::size_t l = 0; l < i; ++l) s += row[l] * (u.u[l + 1] - u.u[l]);
    return s * std::pow(u.grid.dt(), 2.0 * a) / kernel_constants(H).kappa;
}

std::vector<double> compute_M(const FbmPath& w, Hurst H, const TransformOptions& opt) {
    ModePath as_mode;
    as_mode.grid = w.grid;
    as_mode.u = w.w;
    auto tm = transform_mode(as_mode, H, nullptr, opt);
    return tm.Z;  // same scheme applied to the fBM increments
}

}  // namespace fspde
