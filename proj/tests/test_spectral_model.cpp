#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fspde/spectral_model.hpp"

using namespace fspde;

TEST_CASE("mu: presets and trivial cases") {
    const auto heat = heat_periodic();
    CHECK(mu(heat, 1.0, 1) == doctest::Approx(M_PI * M_PI).epsilon(1e-14));
    CHECK(mu(heat, 2.0, 3) == doctest::Approx(2.0 * 9.0 * M_PI * M_PI).epsilon(1e-14));

    // theta = 0 returns rho_j (custom model; the heat domain excludes 0)
    SpectralModel m;
    m.rho = Sequence::power(1.0, 1.0, -5.0);  // rho_j = j - 5
    m.nu = Sequence::constant(0.0);
    CHECK(mu(m, 0.0, 7) == doctest::Approx(2.0));

    // laplacian preset stores nu_j = -1, rho_j = c j^{2/d}
    const auto lap = laplacian_plus_theta(2.0, 1.0);
    CHECK(lap.nu(4) == doctest::Approx(-1.0));
    CHECK(lap.rho(5) == doctest::Approx(5.0));
    CHECK(mu(lap, 2.0, 4) == doctest::Approx(4.0 - 2.0));

    CHECK_THROWS_AS(mu(heat, -1.0, 1), std::invalid_argument);  // theta outside (0, inf)
    CHECK_THROWS_AS(mu(heat, 0.0, 1), std::invalid_argument);   // open interval
}

TEST_CASE("mu is affine in theta") {
    const auto lap = laplacian_plus_theta(3.0, 2.5);
    for (std::size_t j : {1ul, 7ul, 100ul}) {
        const double lhs = mu(lap, 0.3, j) + mu(lap, 1.1, j);
        const double rhs = mu(lap, 1.4, j) + mu(lap, 0.0, j);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-15));
    }
}

TEST_CASE("first_positive_index") {
    const auto heat = heat_periodic();
    const auto r1 = first_positive_index(heat, 1.0, 1000);
    REQUIRE(r1.J.has_value());
    CHECK(*r1.J == 1);
    CHECK(r1.finite_horizon);

    SpectralModel m;  // mu_j = j - 5: positive from j = 6 on
    m.rho = Sequence::power(1.0, 1.0, -5.0);
    m.nu = Sequence::constant(0.0);
    const auto r2 = first_positive_index(m, 0.7, 100);
    REQUIRE(r2.J.has_value());
    CHECK(*r2.J == 6);

    // all-negative drift: explicit not-found outcome
    SpectralModel neg;
    neg.rho = Sequence::zero();
    neg.nu = Sequence::power(M_PI * M_PI, 2.0);
    const auto r3 = first_positive_index(neg, -1.0, 200);
    CHECK_FALSE(r3.J.has_value());
}

TEST_CASE("fisher_normalizer: examples and properties") {
    const auto heat = heat_periodic();
    // heat, theta=1: sum_{j=1,2} nu_j^2/mu_j = pi^2 (1 + 4)
    CHECK(fisher_normalizer(heat, 1.0, 2, 1) ==
          doctest::Approx(5.0 * M_PI * M_PI).epsilon(1e-14));
    CHECK(fisher_normalizer(heat, 1.0, 0, 1) == 0.0);  // empty range

    // laplacian d=2 at theta -> 0+ : 1 + 1/2 + 1/3 (domain is open so use a limit point)
    const auto lap = laplacian_plus_theta(2.0, 1.0);
    CHECK(fisher_normalizer(lap, 1e-12, 3, 1) == doctest::Approx(11.0 / 6.0).epsilon(1e-9));

    // monotone and additive over disjoint ranges
    const double a = fisher_normalizer(heat, 1.0, 10, 1);
    const double b = fisher_normalizer(heat, 1.0, 25, 1);
    CHECK(b >= a);
    CHECK(b == doctest::Approx(a + fisher_normalizer(heat, 1.0, 25, 11)).epsilon(1e-14));

    // mu <= 0 inside the range is a domain error
    SpectralModel m;
    m.rho = Sequence::power(1.0, 1.0, -5.0);
    m.nu = Sequence::constant(1.0);
    CHECK_THROWS_AS(fisher_normalizer(m, 0.0, 10, 1), std::domain_error);
}

TEST_CASE("classify_consistency on the worked examples") {
    CHECK(classify_consistency(heat_periodic()) == ConsistencyRegime::Divergent);
    CHECK(classify_consistency(laplacian_plus_theta(1.0)) == ConsistencyRegime::Convergent);
    CHECK(classify_consistency(laplacian_plus_theta(2.0)) == ConsistencyRegime::Divergent);
    SpectralModel no_meta;
    CHECK(classify_consistency(no_meta) == ConsistencyRegime::Unknown);
}

TEST_CASE("check_parabolicity certificates") {
    const auto heat = heat_periodic();
    const auto rep = check_parabolicity(heat, {1.0}, 2.0, 10000);
    CHECK(rep.pass);
    CHECK(rep.C1 <= 1.0);
    CHECK(rep.delta > 0.0);

    const auto lap = laplacian_plus_theta(2.0, 1.0);
    const auto rep2 = check_parabolicity(lap, {-1.0, 0.5, 2.0}, 2.0, 10000);
    CHECK(rep2.pass);

    // negative theta on the heat sequences: (eig2) fails for every delta
    SpectralModel neg = heat;
    neg.theta_domain = {};  // admit all theta for the exhibit
    const auto rep3 = check_parabolicity(neg, {-1.0}, 2.0, 2000);
    CHECK_FALSE(rep3.pass);
    CHECK_FALSE(rep3.eig2_pass);

    // zero operator: passes with C1 = 0
    SpectralModel zero;
    zero.lambda = Sequence::constant(1.0);
    const auto rep4 = check_parabolicity(zero, {0.0}, 2.0, 100);
    CHECK(rep4.pass);
    CHECK(rep4.C1 == 0.0);

    SpectralModel nolambda;
    CHECK_THROWS_AS(check_parabolicity(nolambda, {0.0}, 2.0, 100), std::invalid_argument);
}

TEST_CASE("check_gamma_summability verdicts") {
    const auto heat = heat_periodic();
    const auto d1 = check_gamma_summability(heat, 1.0, 1.0, 5000);
    CHECK(d1.verdict == SummabilityVerdict::Convergent);
    CHECK(d1.fitted_exponent == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(d1.partial_sum > 0.0);

    // |mu_j| ~ j with gamma = 1: boundary
    const auto lap = laplacian_plus_theta(2.0, 1.0);
    const auto d2 = check_gamma_summability(lap, 0.5, 1.0, 5000);
    CHECK(d2.verdict == SummabilityVerdict::Inconclusive);

    const auto d3 = check_gamma_summability(heat, 1.0, 0.1, 5000);
    CHECK(d3.verdict == SummabilityVerdict::Divergent);  // 2 * 0.1 < 1
}

TEST_CASE("presets: sequences and domains") {
    const auto heat = heat_periodic();
    CHECK(heat.nu(3) == doctest::Approx(9.0 * M_PI * M_PI).epsilon(1e-14));
    CHECK(heat.rho(17) == 0.0);
    CHECK((*heat.lambda)(2) ==
          doctest::Approx(std::sqrt(1.0 + 4.0 * M_PI * M_PI)).epsilon(1e-14));
    CHECK_FALSE(heat.theta_domain.contains(0.0));
    CHECK(heat.theta_domain.contains(3.0));
    REQUIRE(heat.meta.has_value());
    CHECK(heat.meta->d == 1.0);
    CHECK(heat.meta->m1 == 2.0);

    // adjustable frequency constant
    const auto heat4 = heat_periodic(4.0 * M_PI * M_PI);
    CHECK(heat4.nu(1) == doctest::Approx(4.0 * M_PI * M_PI));
}

TEST_CASE("json round trip and preset parsing") {
    const auto m1 = model_from_json(R"({"preset":"heat_periodic"})");
    CHECK(m1.nu(2) == doctest::Approx(4.0 * M_PI * M_PI));

    const auto m2 = model_from_json(
        R"({"preset":"laplacian_plus_theta","params":{"d":2,"c":1.5}})");
    CHECK(m2.rho(4) == doctest::Approx(6.0));

    const auto m3 = model_from_json(R"({
        "name": "shifted",
        "rho": {"kind":"power","scale":1.0,"exponent":1.0,"offset":-5.0},
        "nu": 1.0,
        "theta_domain": [null, 1.0],
        "meta": {"d": 1, "two_m": 2, "m1": 0}
    })");
    CHECK(m3.rho(7) == doctest::Approx(2.0));
    CHECK(m3.nu(3) == doctest::Approx(1.0));
    CHECK(m3.theta_domain.contains(-100.0));
    CHECK_FALSE(m3.theta_domain.contains(1.0));

    const auto text = model_to_json(m3);
    const auto m4 = model_from_json(text);
    CHECK(m4.rho(7) == doctest::Approx(2.0));
    CHECK(m4.theta_domain.hi == doctest::Approx(1.0));

    CHECK_THROWS_AS(model_from_json(R"({"preset":"unknown_thing"})"), std::invalid_argument);
}
