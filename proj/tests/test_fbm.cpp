#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fspde/fbm.hpp"
#include "fspde/rng.hpp"
#include "fspde/stats.hpp"

using namespace fspde;

TEST_CASE("fbm covariance closed form") {
    CHECK(fbm_covariance(Hurst(0.7), 2.0, 2.0) == doctest::Approx(std::pow(2.0, 1.4)));
    CHECK(fbm_covariance(Hurst(0.5), 2.0, 3.0) == doctest::Approx(2.0));  // min(t,s)
    CHECK(fbm_covariance(Hurst(0.75), 1.0, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("sampler determinism and stream separation") {
    const TimeGrid grid(1.0, 256);
    FbmSampler s(Hurst(0.75), grid);
    const auto a = s.sample(99);
    const auto b = s.sample(99);
    CHECK(a.w == b.w);  // bit identical
    const auto c = s.sample(100);
    CHECK(a.w != c.w);
    CHECK(a.w[0] == 0.0);
}

TEST_CASE("ensemble is order independent and matches single samples") {
    const TimeGrid grid(1.0, 64);
    const auto ens = sample_fbm_ensemble(Hurst(0.6), grid, 3, 2024);
    // mode 2 regenerated alone equals its ensemble entry
    const auto solo = sample_fbm(Hurst(0.6), grid, fbm_mode_stream(2024, 2));
    CHECK(ens[1].w == solo.w);
}

TEST_CASE("terminal variance matches t^{2H}") {
    const TimeGrid grid(1.0, 128);
    for (double h : {0.5, 0.75, 0.9}) {
        FbmSampler s(Hurst(h), grid);
        const std::size_t m = 10000;
        std::vector<double> wT(m);
        for (std::size_t r = 0; r < m; ++r) wT[r] = s.sample(derive_stream(5, r)).w.back();
        const double var = stats::variance(wT);
        const double mean = stats::mean(wT);
        // Var(w(T)) = T^{2H} = 1; sample variance has sd ~ sqrt(2/m)
        CHECK(std::fabs(var - 1.0) < 3.0 * std::sqrt(2.0 / double(m)));
        CHECK(std::fabs(mean) < 3.0 / std::sqrt(double(m)));
    }
}

TEST_CASE("midpoint-endpoint covariance matches the closed form (H=3/4)") {
    const TimeGrid grid(1.0, 512);
    const Hurst H(0.75);
    FbmSampler s(H, grid);
    const std::size_t m = 10000;
    double s_mid = 0.0, s_end = 0.0, s_cross = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        const auto p = s.sample(derive_stream(7, r));
        const double a = p.w[256], b = p.w[512];
        s_mid += a;
        s_end += b;
        s_cross += a * b;
    }
    const double cov = s_cross / m - (s_mid / m) * (s_end / m);
    const double expect = fbm_covariance(H, 0.5, 1.0);
    // se of a sample covariance of jointly Gaussian pairs
    const double v1 = fbm_covariance(H, 0.5, 0.5), v2 = fbm_covariance(H, 1.0, 1.0);
    const double se = std::sqrt((v1 * v2 + expect * expect) / double(m));
    CHECK(std::fabs(cov - expect) < 3.0 * se);
}

TEST_CASE("H=1/2 increments are uncorrelated at lag one") {
    const TimeGrid grid(1.0, 100000);
    FbmSampler s(Hurst(0.5), grid);
    const auto p = s.sample(31415);
    double c0 = 0.0, c1 = 0.0;
    std::vector<double> inc(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) inc[i] = p.w[i + 1] - p.w[i];
    for (std::size_t i = 0; i < grid.n; ++i) c0 += inc[i] * inc[i];
    for (std::size_t i = 0; i + 1 < grid.n; ++i) c1 += inc[i] * inc[i + 1];
    const double rho1 = c1 / c0;
    CHECK(std::fabs(rho1) < 3.0 / std::sqrt(double(grid.n)));
}

TEST_CASE("independent modes are uncorrelated") {
    const TimeGrid grid(1.0, 64);
    FbmSampler s(Hurst(0.75), grid);
    const std::size_t m = 10000;
    double s1 = 0.0, s2 = 0.0, s12 = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        const double a = s.sample(fbm_mode_stream(11, 1, r)).w.back();
        const double b = s.sample(fbm_mode_stream(11, 2, r)).w.back();
        s1 += a;
        s2 += b;
        s12 += a * b;
    }
    const double cov = s12 / m - (s1 / m) * (s2 / m);
    CHECK(std::fabs(cov) < 3.0 / std::sqrt(double(m)));
}

TEST_CASE("self-similarity: Var(w(t)) / t^{2H} constant across the grid") {
    const TimeGrid grid(2.0, 64);
    const Hurst H(0.8);
    FbmSampler s(H, grid);
    const std::size_t m = 20000;
    std::vector<double> sums(grid.n + 1, 0.0), sqs(grid.n + 1, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const auto p = s.sample(derive_stream(99, r));
        for (std::size_t i = 1; i <= grid.n; ++i) {
            sums[i] += p.w[i];
            sqs[i] += p.w[i] * p.w[i];
        }
    }
    for (std::size_t i : {std::size_t(8), std::size_t(32), std::size_t(64)}) {
        const double var = sqs[i] / m - (sums[i] / m) * (sums[i] / m);
        const double scaled = var / std::pow(grid.t(i), 2.0 * H.value());
        CHECK(std::fabs(scaled - 1.0) < 3.0 * std::sqrt(2.0 / double(m)));
    }
}

TEST_CASE("cholesky fallback samples the same law") {
    const TimeGrid grid(1.0, 48);
    const Hurst H(0.7);
    FbmSampler chol(H, grid, /*force_cholesky=*/true);
    CHECK(chol.used_cholesky());
    const std::size_t m = 20000;
    std::vector<double> wT(m);
    for (std::size_t r = 0; r < m; ++r) wT[r] = chol.sample(derive_stream(3, r)).w.back();
    CHECK(std::fabs(stats::variance(wT) - 1.0) < 3.0 * std::sqrt(2.0 / double(m)));
    // deterministic too
    CHECK(chol.sample(5).w == chol.sample(5).w);
}

TEST_CASE("non-power-of-two grids are padded internally") {
    const TimeGrid grid(1.0, 100);
    FbmSampler s(Hurst(0.75), grid);
    CHECK_FALSE(s.used_cholesky());
    const auto p = s.sample(1);
    CHECK(p.w.size() == 101);
    const std::size_t m = 20000;
    std::vector<double> wT(m);
    for (std::size_t r = 0; r < m; ++r) wT[r] = s.sample(derive_stream(13, r)).w.back();
    CHECK(std::fabs(stats::variance(wT) - 1.0) < 3.0 * std::sqrt(2.0 / double(m)));
}

TEST_CASE("H below one half is rejected") {
    CHECK_THROWS_AS(Hurst(0.49), std::invalid_argument);
    CHECK_THROWS_AS(Hurst(1.0), std::invalid_argument);
}
