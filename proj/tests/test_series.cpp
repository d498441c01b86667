#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "support/quadrature.hpp"

#include "phasekit/errors.hpp"
#include "phasekit/series.hpp"

using namespace phasekit;
constexpr double pi = std::numbers::pi;

// Plain-loop references, summed until the damping factor underflows.
static double brute_poisson(double theta, double eps) {
    double s = 1.0;
    for (std::int64_t n = 1;; ++n) {
        const double t = 2.0 * std::exp(-double(n) * eps) * std::cos(double(n) * theta);
        s += t;
        if (std::exp(-double(n) * eps) < 1e-18) break;
    }
    return s;
}

static double brute_sine_sum(double theta, double eps) {
    double s = 0.0;
    for (std::int64_t n = 1;; ++n) {
        s += 2.0 * std::exp(-double(n) * eps) * std::sin(double(n) * theta);
        if (std::exp(-double(n) * eps) < 1e-18) break;
    }
    return s;
}

TEST_CASE("poisson kernel equals the damped sum") {
    for (double eps : {0.5, 0.1, 0.01})
        for (double theta : {0.0, 0.3, 1.1, 2.7, pi, -1.4})
            CHECK(poisson_kernel(theta, eps) ==
                  doctest::Approx(brute_poisson(theta, eps)).epsilon(1e-12));
}

TEST_CASE("poisson kernel normalizes to one") {
    for (double eps : {1.0, 0.1, 0.01}) {
        const double mass = testsup::integrate_panels(
                                [&](double t) { return poisson_kernel(t, eps); }, -pi, pi,
                                256, 32) /
                            (2.0 * pi);
        CHECK(std::abs(mass - 1.0) <= 1e-10);
    }
}

TEST_CASE("poisson kernel peaks like 2/eps") {
    for (double eps : {0.1, 0.01, 1e-3}) {
        const double peak = poisson_kernel(0.0, eps);
        CHECK(peak == doctest::Approx(2.0 / eps).epsilon(2.0 * eps));
        CHECK(poisson_kernel(pi, eps) < 1.0);
    }
    CHECK_THROWS_AS(poisson_kernel(0.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(poisson_kernel(0.0, -1.0), InvalidInput);
}

TEST_CASE("sine sum matches the brute-force loop and the cot limit") {
    for (double eps : {0.1, 0.01})
        for (double theta : {0.4, 1.2, 2.9})
            CHECK(sine_cot_sum(theta, eps) ==
                  doctest::Approx(brute_sine_sum(theta, eps)).epsilon(1e-12));

    for (double theta : {pi / 4.0, pi / 2.0, pi})
        CHECK(std::abs(sine_cot_sum(theta, 1e-6) - 1.0 / std::tan(theta / 2.0)) <= 1e-4);
}

TEST_CASE("automatic cutoff hits the term floor or the cap") {
    for (double eps : {1.0, 0.1, 0.01}) {
        const auto n = auto_term_cutoff(eps);
        CHECK(std::exp(-double(n) * eps) < 1e-16);
        CHECK(std::exp(-double(n - 1) * eps) >= 1e-17);
    }
    CHECK(auto_term_cutoff(1e-9) == term_cap);
    CHECK_THROWS_AS(auto_term_cutoff(0.0), InvalidInput);
}

TEST_CASE("regularized sum reproduces the poisson kernel for the unit rule") {
    for (double eps : {0.3, 0.05})
        for (double theta : {0.2, 1.7}) {
            const auto r = regularized_sum([](std::int64_t) { return cplx{1.0, 0.0}; },
                                           theta, eps);
            CHECK(std::abs(r.value - cplx{poisson_kernel(theta, eps), 0.0}) <= 1e-12);
            CHECK(r.reg.eps == eps);
            CHECK(r.reg.n_max >= 1);
            CHECK(r.reg.convergence_estimate >= 0.0);
        }
}

TEST_CASE("regularized sum with the linear rule is the kernel derivative") {
    // sum n e^{-|n| eps} e^{in theta} = -i d/d theta poisson_kernel
    const double eps = 0.05, h = 1e-6;
    for (double theta : {0.7, 2.1}) {
        const auto r =
            regularized_sum([](std::int64_t n) { return cplx{double(n), 0.0}; }, theta, eps);
        const double dp =
            (poisson_kernel(theta + h, eps) - poisson_kernel(theta - h, eps)) / (2.0 * h);
        CHECK(std::abs(r.value - cplx{0.0, -1.0} * dp) <= 1e-4 * std::max(1.0, std::abs(dp)));
        CHECK(std::abs(r.value.real()) <= 1e-10);
    }
}

TEST_CASE("regularized sum rejects growing and non-finite rules") {
    CHECK_THROWS_AS(regularized_sum([](std::int64_t n) { return cplx{std::exp(0.4 * std::abs(double(n))), 0.0}; },
                                    0.3, 0.1),
                    ConvergenceError);
    CHECK_THROWS_AS(regularized_sum([](std::int64_t) { return cplx{std::nan(""), 0.0}; },
                                    0.3, 0.1),
                    InvalidInput);
    CHECK_THROWS_AS(regularized_sum([](std::int64_t) { return cplx{1.0, 0.0}; }, 0.3, -0.1),
                    InvalidInput);
}

TEST_CASE("overlap kernels match their defining sums") {
    const double eps = 0.01, theta = 0.7, phi = 1.9;
    const std::int64_t terms = 6000; // e^{-60} underflow for eps = 0.01

    double sg = 0.0;
    for (std::int64_t k = 1; k <= terms; ++k)
        sg += 2.0 * std::exp(-double(k) * eps) * std::sin(double(k) * theta) *
              std::sin(double(k) * phi);
    CHECK(std::abs(overlap_kernel(OverlapFamily::sg_cosine, theta, phi, eps) - sg) <= 1e-9);

    cplx nn{0.0, 0.0};
    for (std::int64_t n = 0; n <= terms; ++n)
        nn += std::exp(-double(n) * eps) * std::polar(1.0, double(n) * (theta - phi));
    CHECK(std::abs(overlap_kernel(OverlapFamily::nonneg_phase, theta, phi, eps) - nn) <= 1e-9);

    double z2 = 0.0;
    for (std::int64_t n = -terms; n <= terms; ++n)
        z2 += std::exp(-std::abs(double(n)) * eps) *
              (std::cos(double(n) * (theta - phi)) + std::cos(double(n) * (theta + phi)));
    CHECK(std::abs(overlap_kernel(OverlapFamily::z2_cosine, theta, phi, eps) - z2) <= 1e-9);

    double hs = 0.0;
    for (std::int64_t n = 0; n <= terms; ++n) {
        const double f = double(n) + 0.5;
        hs += 2.0 * std::exp(-f * eps) *
              (std::cos(f * (theta - phi)) - std::cos(f * (theta + phi)));
    }
    CHECK(std::abs(overlap_kernel(OverlapFamily::half_sine, theta, phi, eps) - hs) <= 1e-9);
}

TEST_CASE("overlap kernels are symmetric and validated") {
    const double eps = 1e-3;
    for (auto fam : {OverlapFamily::sg_cosine, OverlapFamily::nonneg_phase,
                     OverlapFamily::z2_cosine, OverlapFamily::half_sine}) {
        const cplx a = overlap_kernel(fam, 0.6, 2.2, eps);
        const cplx b = overlap_kernel(fam, 2.2, 0.6, eps);
        if (fam == OverlapFamily::nonneg_phase)
            CHECK(std::abs(a - std::conj(b)) <= 1e-12);
        else
            CHECK(std::abs(a - b) <= 1e-12);
        if (fam != OverlapFamily::nonneg_phase) CHECK(std::abs(a.imag()) == 0.0);
    }
    CHECK_THROWS_AS(overlap_kernel(OverlapFamily::sg_cosine, -0.1, 1.0, eps), InvalidInput);
    CHECK_THROWS_AS(overlap_kernel(OverlapFamily::half_sine, 0.5, pi, eps), InvalidInput);
    // the translation-invariant family accepts any angle
    CHECK_NOTHROW(overlap_kernel(OverlapFamily::nonneg_phase, -2.0, 9.0, eps));
}

TEST_CASE("sg kernel acts as a damped reproducing kernel") {
    // integral_0^pi K_sg(theta, phi) sin(3 phi) dphi = pi e^{-3 eps} sin(3 theta)
    const double eps = 0.1, theta = 1.234;
    const double got = testsup::integrate_panels(
        [&](double phi) {
            return overlap_kernel(OverlapFamily::sg_cosine, theta, phi, eps).real() *
                   std::sin(3.0 * phi);
        },
        0.0, pi - 1e-14, 64, 32);
    CHECK(got == doctest::Approx(pi * std::exp(-3.0 * eps) * std::sin(3.0 * theta))
                     .epsilon(1e-9));
}
