#include "fspde/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace fspde {

namespace {

void require_theta(const SpectralModel& model, double theta) {
    if (!model.theta_domain.contains(theta))
        throw std::invalid_argument("theta outside the model's parameter domain");
}

// least-squares slope of log|f_j| against log j over j in [j_lo, j_hi]
double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (m * sxy - sx * sy) / denom;
}

Sequence sequence_from_json(const nlohmann::json& j) {
    if (j.is_number()) return Sequence::constant(j.get<double>());
    const std::string kind = j.value("kind", "power");
    const double scale = j.value("scale", 0.0);
    const double exponent = j.value("exponent", 0.0);
    const double offset = j.value("offset", 0.0);
    if (kind == "power") return Sequence::power(scale, exponent, offset);
    if (kind == "sqrt_power") return Sequence::sqrt_power(scale, exponent, offset);
    throw std::invalid_argument("unknown sequence kind: " + kind);
}

nlohmann::json sequence_to_json(const Sequence& s) {
    return {{"kind", s.kind() == Sequence::Kind::Power ? "power" : "sqrt_power"},
            {"scale", s.scale()},
            {"exponent", s.exponent()},
            {"offset", s.offset()}};
}

}  // namespace

double mu(const SpectralModel& model, double theta, std::size_t j) {
    require_theta(model, theta);
    if (j < 1) throw std::invalid_argument("mu: mode index starts at 1");
    return theta * model.nu(j) + model.rho(j);
}

IndexSearchResult first_positive_index(const SpectralModel& model, double theta,
                                       std::size_t j_max) {
    require_theta(model, theta);
    IndexSearchResult res;
    res.j_max = j_max;
    std::size_t last_bad = 0;
    for (std::size_t j = 1; j <= j_max; ++j)
        if (!(theta * model.nu(j) + model.rho(j) > 0.0)) last_bad = j;
    if (last_bad < j_max) res.J = last_bad + 1;
    return res;
}

ParabolicityReport check_parabolicity(const SpectralModel& model,
                                      const std::vector<double>& theta_samples,
                                      double two_m, std::size_t j_max) {
    if (!model.lambda)
        throw std::invalid_argument("check_parabolicity: model has no lambda sequence");
    if (theta_samples.empty() || j_max < 10)
        throw std::invalid_argument("check_parabolicity: need theta samples and j_max >= 10");
    for (double th : theta_samples) require_theta(model, th);

    ParabolicityReport rep;
    rep.j_max = j_max;
    rep.note = "finite-j certificate over [1, j_max]; not a proof for all j";

    const Sequence& lam = *model.lambda;
    double c1 = 0.0;
    for (std::size_t j = 1; j <= j_max; ++j) {
        const double lam2m = std::pow(lam(j), two_m);
        for (double th : theta_samples)
            c1 = std::max(c1, std::fabs(model.rho(j) + th * model.nu(j)) / lam2m);
    }
    rep.C1 = c1;
    rep.eig1_pass = std::isfinite(c1);

    // (eig2): look for a delta whose running max is achieved away from the tail
    // (an increasing tail means no finite C2 can plausibly dominate all j).
    const std::size_t tail_start = std::max<std::size_t>(2, (9 * j_max) / 10);
    double best_c2 = std::numeric_limits<double>::infinity();
    double best_delta = std::numeric_limits<double>::quiet_NaN();
    for (int e = -30; e <= 10; ++e) {
        const double delta = std::pow(10.0, e / 10.0);
        double c2 = -std::numeric_limits<double>::infinity();
        std::size_t argmax = 1;
        for (std::size_t j = 1; j <= j_max; ++j) {
            const double lam2m = std::pow(lam(j), two_m);
            for (double th : theta_samples) {
                const double f = -2.0 * (model.rho(j) + th * model.nu(j)) + delta * lam2m;
                if (f > c2) {
                    c2 = f;
                    argmax = j;
                }
            }
        }
        if (argmax < tail_start) {
            if (!rep.eig2_pass || c2 < best_c2) {
                best_c2 = c2;
                best_delta = delta;
            }
            rep.eig2_pass = true;
        }
    }
    rep.delta = best_delta;
    rep.C2 = best_c2;
    rep.pass = rep.eig1_pass && rep.eig2_pass;
    return rep;
}

SummabilityDiagnostic check_gamma_summability(const SpectralModel& model, double theta,
                                              double gamma, std::size_t j_max) {
    SummabilityDiagnostic diag;
    if (j_max < 2 || !(gamma > 0.0)) return diag;

    double sum = 0.0;
    std::vector<std::pair<double, double>> pts;
    const std::size_t fit_lo = std::max<std::size_t>(2, j_max / 10);
    for (std::size_t j = 1; j <= j_max; ++j) {
        const double m = theta * model.nu(j) + model.rho(j);
        sum += std::pow(1.0 + std::fabs(m), -gamma);
        if (j >= fit_lo && std::fabs(m) > 0.0)
            pts.emplace_back(std::log(static_cast<double>(j)), std::log(std::fabs(m)));
    }
    diag.partial_sum = sum;
    diag.fitted_exponent = loglog_slope(pts);

    const double pg = diag.fitted_exponent * gamma;
    if (pg > 1.05)
        diag.verdict = SummabilityVerdict::Convergent;
    else if (pg < 0.95)
        diag.verdict = SummabilityVerdict::Divergent;
    else
        diag.verdict = SummabilityVerdict::Inconclusive;
    return diag;
}

double fisher_normalizer(const SpectralModel& model, double theta, std::size_t N,
                         std::size_t J) {
    require_theta(model, theta);
    double sum = 0.0;
    for (std::size_t j = J; j <= N; ++j) {
        const double m = theta * model.nu(j) + model.rho(j);
        if (!(m > 0.0))
            throw std::domain_error("fisher_normalizer: mu_j(theta) <= 0 inside [J, N]");
        const double nu_j = model.nu(j);
        sum += nu_j * nu_j / m;
    }
    return sum;
}

ConsistencyRegime classify_consistency(const SpectralModel& model) {
    if (!model.meta) return ConsistencyRegime::Unknown;
    const double m = model.meta->two_m / 2.0;
    return model.meta->m1 >= m - model.meta->d / 2.0 ? ConsistencyRegime::Divergent
                                                     : ConsistencyRegime::Convergent;
}

SpectralModel heat_periodic(double nu_scale) {
    SpectralModel model;
    model.name = "heat_periodic";
    model.rho = Sequence::zero();
    model.nu = Sequence::power(nu_scale, 2.0);
    model.lambda = Sequence::sqrt_power(nu_scale, 2.0, 1.0);
    model.theta_domain = {0.0, std::numeric_limits<double>::infinity()};
    model.meta = ModelMeta{1.0, 2.0, 2.0};
    return model;
}

SpectralModel laplacian_plus_theta(double d, double c) {
    if (!(d >= 1.0)) throw std::invalid_argument("laplacian_plus_theta: d must be >= 1");
    SpectralModel model;
    model.name = "laplacian_plus_theta";
    // du - (Laplace u + theta u) dt = dW: A0 = -Laplace (rho_j = c j^{2/d}),
    // A1 = -I (nu_j = -1), so mu_j = c j^{2/d} - theta as in (muk).
    model.rho = Sequence::power(c, 2.0 / d);
    model.nu = Sequence::constant(-1.0);
    model.lambda = Sequence::sqrt_power(c, 2.0 / d, 1.0);
    model.theta_domain = {};  // all of R; positivity of mu_j is index-dependent
    model.meta = ModelMeta{d, 2.0, 0.0};
    return model;
}

SpectralModel model_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    if (j.contains("preset")) {
        const std::string name = j["preset"].get<std::string>();
        const auto params = j.value("params", nlohmann::json::object());
        if (name == "heat_periodic")
            return heat_periodic(params.value("nu_scale", M_PI * M_PI));
        if (name == "laplacian_plus_theta")
            return laplacian_plus_theta(params.value("d", 1.0), params.value("c", 1.0));
        throw std::invalid_argument("unknown preset: " + name);
    }
    SpectralModel model;
    model.name = j.value("name", "custom");
    if (j.contains("rho")) model.rho = sequence_from_json(j["rho"]);
    if (j.contains("nu")) model.nu = sequence_from_json(j["nu"]);
    if (j.contains("lambda")) model.lambda = sequence_from_json(j["lambda"]);
    if (j.contains("theta_domain")) {
        const auto& d = j["theta_domain"];
        ThetaDomain dom;
        if (!d[0].is_null()) dom.lo = d[0].get<double>();
        if (!d[1].is_null()) dom.hi = d[1].get<double>();
        model.theta_domain = dom;
    }
    if (j.contains("meta")) {
        const auto& m = j["meta"];
        model.meta = ModelMeta{m.value("d", 1.0), m.value("two_m", 2.0), m.value("m1", 0.0)};
    }
    return model;
}

std::string model_to_json(const SpectralModel& model) {
    nlohmann::json j;
    j["name"] = model.name;
    j["rho"] = sequence_to_json(model.rho);
    j["nu"] = sequence_to_json(model.nu);
    if (model.lambda) j["lambda"] = sequence_to_json(*model.lambda);
    j["theta_domain"] = nlohmann::json::array();
    j["theta_domain"].push_back(
        std::isfinite(model.theta_domain.lo) ? nlohmann::json(model.theta_domain.lo)
                                             : nlohmann::json());
    j["theta_domain"].push_back(
        std::isfinite(model.theta_domain.hi) ? nlohmann::json(model.theta_domain.hi)
                                             : nlohmann::json());
    if (model.meta)
        j["meta"] = {{"d", model.meta->d}, {"two_m", model.meta->two_m}, {"m1", model.meta->m1}};
    return j.dump(2);
}

}  // namespace fspde
