#include "fspde/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "fspde/fou.hpp"

namespace fspde {

namespace {

double adapted_sum(const std::vector<double>& Q, const std::vector<double>& g,
                   std::size_t lag) {
    // sum_l q_l (g_{l+1} - g_l), q_l = Q[l - lag] (Q[0] for l < lag)
    double s = 0.0;
    for (std::size_t l = 0; l + 1 < g.size(); ++l) {
        const double q = Q[l >= lag ? l - lag : 0];
        s += q * (g[l + 1] - g[l]);
    }
    return s;
}

double adapted_sq_sum(const std::vector<double>& Q, const std::vector<double>& g,
                      std::size_t lag) {
    double s = 0.0;
    for (std::size_t l = 0; l + 1 < g.size(); ++l) {
        const double q = Q[l >= lag ? l - lag : 0];
        s += q * q * (g[l + 1] - g[l]);
    }
    return s;
}

void fill_normalization(EstimateResult& res, const SpectralModel& model,
                        double theta_true) {
    const auto search = first_positive_index(model, theta_true, res.N);
    if (!search.J) throw std::domain_error("mle: no positive-drift tail within N modes");
    res.fisher_I_N = fisher_normalizer(model, theta_true, res.N, *search.J);
    if (!(res.fisher_I_N > 0.0)) throw std::domain_error("mle: Fisher normalizer not positive");
    res.normalized_error = std::sqrt(res.fisher_I_N) * (res.theta_hat - theta_true);
}

}  // namespace

ModeSums mode_sums(const TransformedMode& tm) {
    ModeSums s;
    s.S1 = adapted_sum(tm.Q, tm.Z, tm.q_lag);
    s.S2 = adapted_sq_sum(tm.Q, tm.wclock, tm.q_lag);
    if (tm.M) {
        s.SM = adapted_sum(tm.Q, *tm.M, tm.q_lag);
        s.has_SM = true;
    }
    return s;
}

EstimateResult mle(std::span<const TransformedMode> modes, const SpectralModel& model,
                   std::optional<double> theta_true) {
    if (modes.empty()) throw std::invalid_argument("mle: no modes");
    for (std::size_t k = 1; k < modes.size(); ++k)
        if (!(modes[k].grid == modes[0].grid) || modes[k].H != modes[0].H)
            throw std::invalid_argument("mle: modes must share grid and H");

    EstimateResult res;
    res.N = modes.size();
    res.S1.reserve(modes.size());
    res.S2.reserve(modes.size());
    for (const auto& tm : modes) {
        const auto s = mode_sums(tm);
        const double nu_j = model.nu(tm.mode);
        const double rho_j = model.rho(tm.mode);
        res.S1.push_back(s.S1);
        res.S2.push_back(s.S2);
        res.numerator += nu_j * (s.S1 + rho_j * s.S2);
        res.denominator += nu_j * nu_j * s.S2;
    }
    if (res.denominator == 0.0)
        throw std::domain_error("mle: degenerate data (zero denominator)");
    res.theta_hat = -res.numerator / res.denominator;
    if (theta_true) fill_normalization(res, model, *theta_true);
    return res;
}

EstimateResult mle_white(std::span<const ModePath> modes, const SpectralModel& model,
                         Hurst H, std::optional<double> theta_true) {
    if (!H.is_half()) throw std::domain_error("mle_white: defined only for H = 1/2");
    if (modes.empty()) throw std::invalid_argument("mle_white: no modes");

    EstimateResult res;
    res.N = modes.size();
    const double dt = modes[0].grid.dt();
    for (const auto& mp : modes) {
        if (!(mp.grid == modes[0].grid))
            throw std::invalid_argument("mle_white: modes must share grid");
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t l = 0; l + 1 < mp.u.size(); ++l) {
            s1 += mp.u[l] * (mp.u[l + 1] - mp.u[l]);
            s2 += mp.u[l] * mp.u[l] * dt;
        }
        const double nu_j = model.nu(mp.mode);
        const double rho_j = model.rho(mp.mode);
        res.S1.push_back(s1);
        res.S2.push_back(s2);
        res.numerator += nu_j * (s1 + rho_j * s2);
        res.denominator += nu_j * nu_j * s2;
    }
    if (res.denominator == 0.0)
        throw std::domain_error("mle_white: degenerate data (zero denominator)");
    res.theta_hat = -res.numerator / res.denominator;
    if (theta_true) fill_normalization(res, model, *theta_true);
    return res;
}

double log_likelihood(double theta, std::span<const TransformedMode> modes,
                      const SpectralModel& model) {
    if (!model.theta_domain.contains(theta))
        throw std::invalid_argument("log_likelihood: theta outside domain");
    double ll = 0.0;
    for (const auto& tm : modes) {
        const auto s = mode_sums(tm);
        const double m = theta * model.nu(tm.mode) + model.rho(tm.mode);
        ll += -m * s.S1 - 0.5 * m * m * s.S2;
    }
    return ll;
}

double normalized_error(const EstimateResult& result, double theta_true) {
    if (!(result.fisher_I_N > 0.0))
        throw std::domain_error("normalized_error: Fisher normalizer missing or nonpositive");
    return std::sqrt(result.fisher_I_N) * (result.theta_hat - theta_true);
}

double longtime_single_mode(const TransformedMode& mode, double rho, double nu) {
    if (nu == 0.0) throw std::invalid_argument("longtime_single_mode: nu must be nonzero");
    const auto s = mode_sums(mode);
    const double den = nu * nu * s.S2;
    if (den == 0.0) throw std::domain_error("longtime_single_mode: zero denominator");
    return -nu * (s.S1 + rho * s.S2) / den;
}

double ergodic_single_mode(const ModePath& u, double rho, double nu, Hurst H) {
    if (nu == 0.0) throw std::invalid_argument("ergodic_single_mode: nu must be nonzero");
    const double dt = u.grid.dt();
    double energy = 0.0;  // trapezoid int_0^T u^2 dt
    for (std::size_t l = 0; l + 1 < u.u.size(); ++l)
        energy += 0.5 * dt * (u.u[l] * u.u[l] + u.u[l + 1] * u.u[l + 1]);
    if (!(energy > 0.0)) throw std::domain_error("ergodic_single_mode: zero path energy");
    const double c = ergodic_constant(H);
    return std::pow(c * u.grid.T / energy, 0.5 / H.value()) / nu - rho / nu;
}

ErgodicAllModesResult ergodic_all_modes(std::span<const ModePath> modes,
                                        const SpectralModel& model, Hurst H) {
    if (modes.empty()) throw std::invalid_argument("ergodic_all_modes: no modes");
    const double twoH = 2.0 * H.value();
    double nu_sum = 0.0, energy_sum = 0.0;
    for (const auto& mp : modes) {
        if (model.rho(mp.mode) != 0.0)
            throw std::invalid_argument("ergodic_all_modes: requires rho_j = 0 (A0 = 0)");
        const double nu_j = model.nu(mp.mode);
        if (!(nu_j > 0.0))
            throw std::invalid_argument("ergodic_all_modes: requires nu_j > 0");
        nu_sum += std::pow(nu_j, -twoH);
        const double dt = mp.grid.dt();
        for (std::size_t l = 0; l + 1 < mp.u.size(); ++l)
            energy_sum += 0.5 * dt * (mp.u[l] * mp.u[l] + mp.u[l + 1] * mp.u[l + 1]);
    }
    if (!(energy_sum > 0.0)) throw std::domain_error("ergodic_all_modes: zero energy");

    ErgodicAllModesResult out;
    out.truncation_J = modes.size();
    const double c = ergodic_constant(H);
    out.theta_tilde =
        std::pow(c * modes[0].grid.T * nu_sum / energy_sum, 0.5 / H.value());

    // crude tail estimate for sum_{j>J} nu_j^{-2H} from a power-law fit
    const std::size_t J = modes.size();
    if (J >= 4) {
        const double lo = model.nu(std::max<std::size_t>(1, J / 2));
        const double hi = model.nu(J);
        if (lo > 0.0 && hi > 0.0 && hi != lo) {
            const double p = std::log(hi / lo) /
                             std::log(static_cast<double>(J) / std::max<std::size_t>(1, J / 2));
            const double expo = twoH * p;
            if (expo > 1.0)
                out.tail_bound = std::pow(hi, -twoH) * static_cast<double>(J) / (expo - 1.0);
            else
                out.tail_bound = std::numeric_limits<double>::infinity();
        }
    }
    return out;
}

double degenerate_exact(double u_s, double u_t, double s, double t, double rho, double nu) {
    if (nu == 0.0) throw std::invalid_argument("degenerate_exact: nu must be nonzero");
    if (t == s) throw std::invalid_argument("degenerate_exact: need t != s");
    if (u_s == 0.0 || u_t == 0.0 || (u_s > 0.0) != (u_t > 0.0))
        throw std::domain_error("degenerate_exact: observations must be nonzero, same sign");
    return std::log(u_s / u_t) / (nu * (t - s)) - rho / nu;
}

}  // namespace fspde
