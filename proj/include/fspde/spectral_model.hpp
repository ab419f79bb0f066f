#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fspde/grid.hpp"

namespace fspde {

// Closed-form eigenvalue sequence j -> value, evaluated on demand so that the
// mode index is unbounded and storage is O(1).
class Sequence {
  public:
    enum class Kind { Power, SqrtPower };

    static Sequence power(double scale, double exponent, double offset = 0.0) {
        return Sequence{Kind::Power, scale, exponent, offset};
    }
    // sqrt(offset + scale * j^exponent)
    static Sequence sqrt_power(double scale, double exponent, double offset = 0.0) {
        return Sequence{Kind::SqrtPower, scale, exponent, offset};
    }
    static Sequence zero() { return power(0.0, 0.0); }
    static Sequence constant(double c) { return power(0.0, 0.0, c); }

    double operator()(std::size_t j) const {
        const double jj = static_cast<double>(j);
        const double core = scale_ * std::pow(jj, exponent_) + offset_;
        return kind_ == Kind::Power ? core : std::sqrt(core);
    }

    Kind kind() const { return kind_; }
    double scale() const { return scale_; }
    double exponent() const { return exponent_; }
    double offset() const { return offset_; }

  private:
    Sequence(Kind k, double s, double e, double o)
        : kind_(k), scale_(s), exponent_(e), offset_(o) {}
    Kind kind_;
    double scale_, exponent_, offset_;
};

struct ThetaDomain {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double theta) const { return theta > lo && theta < hi; }  // open interval
};

struct ModelMeta {
    double d = 1.0;      // spatial dimension
    double two_m = 2.0;  // order 2m of A0 + theta A1
    double m1 = 0.0;     // order of A1
};

// A diagonalizable parameter-dependent equation reduced to its eigenvalue
// sequences: A0 h_j = rho_j h_j, A1 h_j = nu_j h_j, Lambda h_j = lambda_j h_j.
struct SpectralModel {
    std::string name = "custom";
    Sequence rho = Sequence::zero();
    Sequence nu = Sequence::zero();
    std::optional<Sequence> lambda;
    ThetaDomain theta_domain;
    std::optional<ModelMeta> meta;
};

enum class ConsistencyRegime { Divergent, Convergent, Unknown };

struct IndexSearchResult {
    std::optional<std::size_t> J;  // empty: not found within j_max
    std::size_t j_max = 0;
    // The certificate is finite: mu_j > 0 was checked for J <= j <= j_max only.
    bool finite_horizon = true;
};

struct ParabolicityReport {
    bool pass = false;
    bool eig1_pass = false;
    bool eig2_pass = false;
    double C1 = std::numeric_limits<double>::quiet_NaN();
    double delta = std::numeric_limits<double>::quiet_NaN();
    double C2 = std::numeric_limits<double>::quiet_NaN();
    std::size_t j_max = 0;
    std::string note;  // finite-j certificate disclaimer
};

enum class SummabilityVerdict { Convergent, Divergent, Inconclusive };

struct SummabilityDiagnostic {
    double partial_sum = 0.0;
    double fitted_exponent = 0.0;
    SummabilityVerdict verdict = SummabilityVerdict::Inconclusive;
};

/// mu_j(theta) = theta * nu_j + rho_j. Throws if theta is outside the domain.
double mu(const SpectralModel& model, double theta, std::size_t j);

/// Smallest J <= j_max with mu_j(theta) > 0 for all J <= j <= j_max.
IndexSearchResult first_positive_index(const SpectralModel& model, double theta,
                                       std::size_t j_max);

/// Finite-j certificate for the eigenvalue form of m-parabolicity:
///   (eig1)  lambda_j^{-2m} |rho_j + theta nu_j| <= C1
///   (eig2)  -2(rho_j + theta nu_j) + delta lambda_j^{2m} <= C2
/// over the sampled thetas and j <= j_max, scanning a delta grid.
ParabolicityReport check_parabolicity(const SpectralModel& model,
                                      const std::vector<double>& theta_samples,
                                      double two_m, std::size_t j_max);

/// Partial sum of (1 + |mu_j|)^{-gamma} plus a log-log power-law fit of |mu_j|
/// over the top decade of j; never throws.
SummabilityDiagnostic check_gamma_summability(const SpectralModel& model, double theta,
                                              double gamma, std::size_t j_max);

/// I_N = sum_{j=J}^{N} nu_j^2 / mu_j(theta); empty range gives 0.
double fisher_normalizer(const SpectralModel& model, double theta, std::size_t N,
                         std::size_t J);

/// Divergent-Fisher (consistent-estimator) regime iff m1 >= m - d/2.
ConsistencyRegime classify_consistency(const SpectralModel& model);

/// Presets from the worked examples: the 1-d periodic heat equation and the
/// Dirichlet Laplacian plus theta*u (asymptotic eigenvalue surrogate c*j^{2/d}).
SpectralModel heat_periodic(double nu_scale = M_PI * M_PI);
SpectralModel laplacian_plus_theta(double d, double c = 1.0);

/// JSON construction; schema documented in the README.
SpectralModel model_from_json(const std::string& json_text);
std::string model_to_json(const SpectralModel& model);

}  // namespace fspde
