#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "support/quadrature.hpp"
#include "support/test_rng.hpp"
#include "support/window_oracle.hpp"

#include "phasekit/bases.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/phase_stats.hpp"
#include "phasekit/states.hpp"

using namespace phasekit;
constexpr double pi = std::numbers::pi;

// Quadrature oracle for basis inner products, independent of the library's
// trapezoid tables.
static double gl_overlap(BasisFamily fa, BasisFamily fb, std::size_t m, std::size_t n) {
    const double w = std::sqrt(basis_weight(fa) * basis_weight(fb));
    return testsup::integrate_panels(
        [&](double t) {
            return w * basis_wavefunction(fa, m, t) * basis_wavefunction(fb, n, t);
        },
        0.0, pi - 1e-14, 64, 32);
}

TEST_CASE("basis wavefunctions have the stated forms") {
    const double t = 0.83;
    CHECK(basis_wavefunction(BasisFamily::sg_cosine, 2, t) ==
          doctest::Approx(std::sin(3.0 * t)).epsilon(1e-15));
    CHECK(basis_wavefunction(BasisFamily::z2_cosine, 0, t) == 1.0);
    CHECK(basis_wavefunction(BasisFamily::z2_cosine, 4, t) ==
          doctest::Approx(std::sqrt(2.0) * std::cos(4.0 * t)).epsilon(1e-15));
    CHECK(basis_wavefunction(BasisFamily::half_sine, 1, t) ==
          doctest::Approx(std::sqrt(2.0) * std::sin(1.5 * t)).epsilon(1e-15));
    CHECK(basis_weight(BasisFamily::sg_cosine) == doctest::Approx(2.0 / pi));
    CHECK(basis_weight(BasisFamily::z2_cosine) == doctest::Approx(1.0 / pi));
    CHECK(basis_weight(BasisFamily::half_sine) == doctest::Approx(1.0 / pi));
    CHECK_THROWS_AS(basis_wavefunction(BasisFamily::sg_cosine, 0, std::nan("")),
                    InvalidInput);
}

TEST_CASE("families are orthonormal under their weights") {
    for (auto fam : {BasisFamily::sg_cosine, BasisFamily::z2_cosine, BasisFamily::half_sine})
        for (std::size_t m = 0; m < 6; ++m)
            for (std::size_t n = 0; n < 6; ++n) {
                const double want = (m == n) ? 1.0 : 0.0;
                CHECK(std::abs(gl_overlap(fam, fam, m, n) - want) <= 1e-12);
            }
}

TEST_CASE("overlap matrix agrees with the quadrature oracle") {
    const auto r = overlap_matrix(BasisFamily::sg_cosine, BasisFamily::half_sine, 8, 256);
    for (std::size_t m = 0; m < 8; ++m)
        for (std::size_t n = 0; n < 8; ++n) {
            CHECK(std::abs(r.matrix(m, n).imag()) == 0.0);
            CHECK(std::abs(r.matrix(m, n).real() - gl_overlap(BasisFamily::sg_cosine,
                                                              BasisFamily::half_sine, m, n)) <=
                  1e-9);
        }

    // reported defect is what the entries imply
    double dev = 0.0;
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) {
            cplx s{0.0, 0.0};
            for (std::size_t j = 0; j < 8; ++j)
                s += std::conj(r.matrix(j, a)) * r.matrix(j, b);
            dev = std::max(dev, std::abs(s - cplx{a == b ? 1.0 : 0.0, 0.0}));
        }
    CHECK(r.unitarity_defect == doctest::Approx(dev).epsilon(1e-12));
}

TEST_CASE("same-family overlap blocks are the identity") {
    for (auto fam : {BasisFamily::sg_cosine, BasisFamily::z2_cosine, BasisFamily::half_sine}) {
        const auto r = overlap_matrix(fam, fam, 16, 256);
        for (std::size_t m = 0; m < 16; ++m)
            for (std::size_t n = 0; n < 16; ++n)
                CHECK(std::abs(r.matrix(m, n) - cplx{m == n ? 1.0 : 0.0, 0.0}) <= 1e-12);
        CHECK(r.unitarity_defect <= 1e-11);
    }
}

TEST_CASE("overlap matrix argument validation") {
    CHECK_THROWS_AS(overlap_matrix(BasisFamily::sg_cosine, BasisFamily::half_sine, 0, 256),
                    InvalidInput);
    CHECK_THROWS_AS(overlap_matrix(BasisFamily::sg_cosine, BasisFamily::half_sine, 8, 64),
                    InvalidInput);
    CHECK_THROWS_AS(overlap_matrix(BasisFamily::sg_cosine, BasisFamily::half_sine, 64,
                                   (std::size_t(1) << 26) / 64),
                    ResourceLimit);
}

TEST_CASE("parity is an involution and respects lattices") {
    const auto st = testsup::random_mode_state(606, 16, -9);
    const auto once = parity_apply(st);
    const auto twice = parity_apply(once);
    REQUIRE(twice.size() == st.size());
    CHECK(twice.l_min_int() == st.l_min_int());
    for (std::size_t k = 0; k < st.size(); ++k) CHECK(std::abs(twice[k] - st[k]) == 0.0);
    // reflection really lands on the mirrored slot
    CHECK(once.l_min_int() == -st.l_max_int());
    CHECK(std::abs(once[0] - st[st.size() - 1]) == 0.0);

    const auto half = ModeExpansion::from_twice_index(1, {cplx{0.6, 0.0}, cplx{0.8, 0.0}});
    CHECK_THROWS_AS(parity_apply(half), UnsupportedInput);
    const auto signed_half = parity_apply(half, true);
    CHECK(signed_half.twice_l_min() == -3);
    CHECK(std::abs(signed_half[0] + cplx{0.8, 0.0}) == 0.0);
}

TEST_CASE("z2 symmetrization projects and normalizes") {
    const auto st = testsup::random_mode_state(607, 12, -6);
    const auto sym = z2_symmetrize(st);
    CHECK(sym.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    // projection result is parity even
    const auto mirrored = parity_apply(sym);
    for (std::size_t k = 0; k < sym.size(); ++k)
        CHECK(std::abs(mirrored[k] - sym[k]) <= 1e-12);
    // idempotent
    const auto again = z2_symmetrize(sym);
    REQUIRE(again.size() == sym.size());
    for (std::size_t k = 0; k < sym.size(); ++k) CHECK(std::abs(again[k] - sym[k]) <= 1e-12);
    // signed projector annihilates the even state |0>
    CHECK_THROWS_AS(z2_symmetrize(make_number_state(0), true), DegenerateProjection);
}

TEST_CASE("ladder maps act as annihilation and creation") {
    const auto n5 = make_number_state(5);
    const auto low = ladder_apply(n5, LadderDirection::lower);
    CHECK(low.norm_squared() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(low.l_min_int() <= 4);
    CHECK(std::abs(low[std::size_t(4 - low.l_min_int())] - std::sqrt(5.0)) <= 1e-15);

    const auto high = ladder_apply(n5, LadderDirection::raise);
    CHECK(high.norm_squared() == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(std::abs(high[std::size_t(6 - high.l_min_int())] - std::sqrt(6.0)) <= 1e-15);

    // raise(lower |n>) = n |n>
    const auto back = ladder_apply(low, LadderDirection::raise);
    CHECK(std::abs(back[std::size_t(5 - back.l_min_int())] - 5.0) <= 1e-13);

    // lowering the ground state gives the zero vector, flagged unnormalized
    const auto zero = ladder_apply(make_number_state(0), LadderDirection::lower);
    CHECK(zero.norm_squared() == 0.0);
    CHECK(!zero.normalized());

    // number expectation via the ladder: <a^dag a> = ||a psi||^2
    const auto st = testsup::random_mode_state(321, 16, 0);
    const auto lowered = ladder_apply(st, LadderDirection::lower);
    const auto ms = momentum_stats(st);
    CHECK(lowered.norm_squared() == doctest::Approx(ms.mean).epsilon(1e-12));

    // rotor states with negative modes are rejected
    CHECK_THROWS_AS(ladder_apply(make_number_state(-1), LadderDirection::lower),
                    UnsupportedInput);
}

TEST_CASE("shift is exactly norm preserving and invertible") {
    const auto st = testsup::random_mode_state(11, 20, -10);
    const auto up = shift_apply(st, ShiftDirection::up);
    CHECK(up.twice_l_min() == st.twice_l_min() + 2);
    CHECK(up.norm_squared() == st.norm_squared());
    const auto back = shift_apply(up, ShiftDirection::down);
    CHECK(back.twice_l_min() == st.twice_l_min());
    for (std::size_t k = 0; k < st.size(); ++k) CHECK(std::abs(back[k] - st[k]) == 0.0);
}

TEST_CASE("time evolution rotates the density rigidly") {
    const auto st = make_coherent_state(2.0, 0.4, 1e-12);
    const double omega = 1.0, t = 0.7;
    const auto evolved = time_evolve(st, omega, t);
    CHECK(evolved.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
    for (double theta : {0.0, 1.0, 2.5})
        CHECK(testsup::density_at(evolved, theta) ==
              doctest::Approx(testsup::density_at(st, theta - omega * t)).epsilon(1e-11));

    // windowed statistics ride along with the rotation
    const auto u0 = phase_uncertainty(st);
    const auto u1 = phase_uncertainty(evolved);
    CHECK(u1.variance == doctest::Approx(u0.variance).epsilon(1e-9));
    const double shift = std::abs(canonical_alpha(u0.alpha0 + omega * t) - u1.alpha0);
    CHECK(std::min(shift, 2.0 * pi - shift) <= 1e-7);

    CHECK_THROWS_AS(time_evolve(st, std::nan(""), 1.0), InvalidInput);
    CHECK_THROWS_AS(time_evolve(testsup::random_mode_state(2, 4, -2), 1.0, 1.0),
                    UnsupportedInput);
}
