#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "fspde/fft.hpp"
#include "fspde/rng.hpp"
#include "fspde/special.hpp"
#include "fspde/stats.hpp"

using namespace fspde;

namespace {

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += a[j] * std::polar(1.0, -2.0 * M_PI * double(j) * double(k) / double(n));
        out[k] = s;
    }
    return out;
}

}  // namespace

TEST_CASE("fft matches naive DFT") {
    NormalStream g(42);
    std::vector<std::complex<double>> a(16);
    for (auto& v : a) v = {g(), g()};
    auto b = a;
    fft::transform(b, false);
    const auto ref = naive_dft(a);
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(std::abs(b[k] - ref[k]) < 1e-10);

    fft::transform(b, true);  // unnormalized inverse
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(std::abs(b[k] / 16.0 - a[k]) < 1e-12);
}

TEST_CASE("fft rejects non-power-of-two sizes") {
    std::vector<std::complex<double>> a(12);
    CHECK_THROWS_AS(fft::transform(a, false), std::invalid_argument);
}

TEST_CASE("linear convolution") {
    std::vector<double> x = {1.0, 2.0, 3.0};
    std::vector<double> y = {4.0, 0.0, -1.0, 2.0};
    // direct: full convolution is {4, 8, 11, 0, 1, 6}
    const auto c = fft::convolve(x, y, 6);
    const double expect[6] = {4, 8, 11, 0, 1, 6};
    for (int i = 0; i < 6; ++i) CHECK(c[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("rng reproducibility and stream independence") {
    NormalStream a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
    CHECK(derive_stream(1, 2, 3) != derive_stream(1, 3, 2));
    CHECK(derive_stream(1, 2, 3) == derive_stream(1, 2, 3));
    CHECK(derive_stream(2, 2, 3) != derive_stream(1, 2, 3));
}

TEST_CASE("normal stream moments") {
    NormalStream g(123);
    const std::size_t n = 200000;
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g();
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::fabs(mean) < 3.0 / std::sqrt(double(n)));
    CHECK(std::fabs(var - 1.0) < 3.0 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("gamma function values") {
    using special::gamma_fn;
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(gamma_fn(0.1) == doctest::Approx(9.5135076986687318).epsilon(1e-12));
    CHECK(gamma_fn(2.7) == doctest::Approx(1.5446858458505938).epsilon(1e-12));
    // recurrence across the range used by the kernel constants
    for (double x : {0.55, 0.8, 1.3, 2.2}) {
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gamma_fn(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::invalid_argument);
}

TEST_CASE("bessel_i: half-integer closed forms") {
    using special::bessel_i;
    const double i_half = std::sqrt(2.0 / M_PI) * std::sinh(1.0);
    const double i_mhalf = std::sqrt(2.0 / M_PI) * std::cosh(1.0);
    CHECK(bessel_i(0.5, 1.0) == doctest::Approx(i_half).epsilon(1e-12));
    CHECK(bessel_i(-0.5, 1.0) == doctest::Approx(i_mhalf).epsilon(1e-12));
    // half-integer forms hold on the asymptotic branch as well
    const double x = 40.0;
    CHECK(special::bessel_i_scaled(0.5, x) ==
          doctest::Approx(std::exp(-x) * std::sqrt(2.0 / (M_PI * x)) * std::sinh(x))
              .epsilon(1e-12));
}

TEST_CASE("bessel_i: frozen reference values, both signs and branches") {
    using special::bessel_i;
    using special::bessel_i_scaled;
    CHECK(bessel_i(-0.75, 2.0) == doctest::Approx(1.8910353719013047).epsilon(1e-12));
    CHECK(bessel_i(-0.6, 10.0) == doctest::Approx(2762.6948645416161).epsilon(1e-12));
    CHECK(bessel_i(0.9, 0.3) == doctest::Approx(0.19078546801325941).epsilon(1e-12));
    CHECK(bessel_i_scaled(0.25, 100.0) ==
          doctest::Approx(0.039931835556842865).epsilon(1e-12));
    CHECK(bessel_i_scaled(-0.25, 35.0) ==
          doctest::Approx(0.067617087999102666).epsilon(1e-12));
    CHECK(bessel_i_scaled(0.6, 30.0) == doctest::Approx(0.072700852710348488).epsilon(1e-12));
    CHECK(bessel_i_scaled(-0.9, 55.0) == doctest::Approx(0.053517686113323866).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_i(1.2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_i(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("bessel_i: series and asymptotic branches agree at the switch") {
    for (double p : {-0.9, -0.75, -0.5, -0.25, -0.1, 0.1, 0.25, 0.5, 0.75, 0.9})
        CHECK(special::bessel_branch_gap(p) < 1e-9);
}

TEST_CASE("stats basics") {
    std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 10.0};
    CHECK(stats::mean(x) == doctest::Approx(4.0));
    CHECK(stats::median(x) == doctest::Approx(3.0));
    CHECK(stats::variance(x) == doctest::Approx(12.5));
    std::vector<double> even = {3.0, 1.0, 4.0, 2.0};
    CHECK(stats::median(even) == doctest::Approx(2.5));
    CHECK(std::isnan(stats::variance(std::vector<double>{1.0})));
}

TEST_CASE("normal cdf and KS") {
    CHECK(stats::normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(stats::normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));

    // sample drawn from the normal quantile grid: tiny KS distance, p near 1
    std::vector<double> good;
    const int m = 500;
    for (int i = 1; i <= m; ++i) {
        const double u = (i - 0.5) / m;
        // crude quantile via bisection on the cdf
        double lo = -8.0, hi = 8.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (stats::normal_cdf(mid) < u ? lo : hi) = mid;
        }
        good.push_back(0.5 * (lo + hi));
    }
    const double d_good = stats::ks_distance_normal(good);
    CHECK(d_good < 0.01);
    CHECK(stats::ks_pvalue(d_good, m) > 0.5);

    // constant sample at 0: D = 1/2 by construction
    std::vector<double> degenerate(200, 0.0);
    CHECK(stats::ks_distance_normal(degenerate) == doctest::Approx(0.5));
    CHECK(stats::ks_pvalue(0.5, 200) < 1e-10);
}
