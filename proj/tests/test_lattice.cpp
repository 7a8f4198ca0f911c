#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "eopk/errors.hpp"
#include "eopk/lattice.hpp"
#include "oracles.hpp"

using namespace eopk;
using cplx = std::complex<double>;

TEST_CASE("lattice invariants at tau = i") {
    const TorusLattice L = build_lattice(1.0);
    CHECK(std::abs(L.e1 + L.e2 + L.e3) < 1e-12);
    CHECK(std::abs(L.g3) < 1e-12);  // square-lattice symmetry forces g3 = 0
    CHECK(std::abs(L.g2 + 4.0 * (L.e1 * L.e2 + L.e2 * L.e3 + L.e3 * L.e1)) < 1e-10);
    CHECK(L.g2 == doctest::Approx(oracle::frozen_tau_i::g2).epsilon(1e-14));
    CHECK(L.e1 == doctest::Approx(oracle::frozen_tau_i::e1).epsilon(1e-13));
    CHECK(L.eta1 == doctest::Approx(oracle::frozen_tau_i::eta1).epsilon(1e-14));
}

TEST_CASE("g2 and g3 match the direct Eisenstein lattice sum") {
    for (double tau : {1.0, 0.8}) {
        const TorusLattice L = build_lattice(tau);
        CHECK(L.g2 == doctest::Approx(oracle::g2_bruteforce(tau)).epsilon(1e-8));
        if (std::abs(L.g3) > 1.0)
            CHECK(L.g3 == doctest::Approx(oracle::g3_bruteforce(tau)).epsilon(1e-8));
        else
            CHECK(std::abs(L.g3 - oracle::g3_bruteforce(tau)) < 1e-8);
    }
}

TEST_CASE("frozen point values, tau = i") {
    const TorusLattice L = build_lattice(1.0);
    const auto p = wp(L, {0.3, 0.5});
    CHECK(p.real() == doctest::Approx(oracle::frozen_tau_i::wp_gamma_03_re).epsilon(1e-12));
    CHECK(std::abs(p.imag()) < 1e-12);
    const auto pp = wp_prime(L, {0.3, 0.5});
    CHECK(pp.real() == doctest::Approx(oracle::frozen_tau_i::wpp_gamma_03_re).epsilon(1e-12));
    const auto pz = wp(L, {0.23, 0.31});
    CHECK(pz.real() == doctest::Approx(oracle::frozen_tau_i::wp_z1_re).epsilon(1e-12));
    CHECK(pz.imag() == doctest::Approx(oracle::frozen_tau_i::wp_z1_im).epsilon(1e-12));
    const auto ppz = wp_prime(L, {0.23, 0.31});
    CHECK(ppz.real() == doctest::Approx(oracle::frozen_tau_i::wpp_z1_re).epsilon(1e-12));
    CHECK(ppz.imag() == doctest::Approx(oracle::frozen_tau_i::wpp_z1_im).epsilon(1e-12));
}

TEST_CASE("wp periodicity and parity") {
    const TorusLattice L = build_lattice(1.0);
    auto g = oracle::rng();
    for (int i = 0; i < 20; ++i) {
        const cplx z(oracle::rand_t(g), oracle::rand_t(g) * L.tau_im);
        if (lattice_distance(L, z) < 1e-3) continue;
        CHECK(std::abs(wp(L, z + 1.0) - wp(L, z)) < 1e-10);
        CHECK(std::abs(wp(L, z + L.tau()) - wp(L, z)) < 1e-10);
        CHECK(std::abs(wp_prime(L, -z) + wp_prime(L, z)) < 1e-10);
        CHECK(std::abs(zeta_w(L, -z) + zeta_w(L, z)) < 1e-10);
    }
}

TEST_CASE("Laurent normalization near the pole") {
    const TorusLattice L = build_lattice(1.0);
    const cplx z(1e-4, 0.0);
    CHECK(std::abs(z * z * wp(L, z) - 1.0) < 1e-6);
    // wp' leading term is -2 z^{-3}
    CHECK(std::abs(z * z * z * wp_prime(L, z) + 2.0) < 1e-6);
}

TEST_CASE("half-period values and critical points") {
    for (double tau : {1.0, 1.3}) {
        const TorusLattice L = build_lattice(tau);
        CHECK(std::abs(wp(L, {0.5, 0.0}) - L.e1) < 1e-10);
        CHECK(std::abs(wp(L, {0.0, 0.5 * tau}) - L.e3) < 1e-10);
        CHECK(std::abs(wp(L, {0.5, 0.5 * tau}) - L.e2) < 1e-10);
        CHECK(std::abs(wp_prime(L, {0.5, 0.0})) < 1e-10);
        CHECK(std::abs(wp_prime(L, {0.0, 0.5 * tau})) < 1e-10);
        CHECK(std::abs(wp_prime(L, {0.5, 0.5 * tau})) < 1e-10);
    }
}

TEST_CASE("curve equation residual at random points") {
    for (double tau : {1.0, 0.8}) {
        const TorusLattice L = build_lattice(tau);
        auto g = oracle::rng(12021u);
        for (int i = 0; i < 50; ++i) {
            const cplx z(oracle::rand_t(g), oracle::rand_t(g) * tau);
            if (lattice_distance(L, z) < 5e-2) continue;
            const auto p = wp(L, z), pp = wp_prime(L, z);
            CHECK(std::abs(pp * pp - (4.0 * p * p * p - L.g2 * p - L.g3)) < 1e-9);
        }
    }
}

TEST_CASE("reality on the A-cycle") {
    const TorusLattice L = build_lattice(1.0);
    for (int i = 1; i < 40; ++i) {
        const double t = i / 40.0;
        CHECK(std::abs(wp(L, {t, 0.5}).imag()) < 1e-10);
        CHECK(std::abs(wp_prime(L, {t, 0.5}).imag()) < 1e-10);
    }
}

TEST_CASE("zeta: derivative, quasi-periods, special values") {
    const TorusLattice L = build_lattice(1.0);
    auto fz = [&L](cplx z) { return zeta_w(L, z); };
    auto g = oracle::rng(5u);
    cplx first_inc = 0.0;
    for (int i = 0; i < 20; ++i) {
        const cplx z(oracle::rand_t(g), oracle::rand_t(g));
        if (lattice_distance(L, z) < 0.15) continue;
        CHECK(std::abs(oracle::cdiff(fz, z) + wp(L, z)) < 1e-6);
        const cplx inc = zeta_w(L, z + 1.0) - zeta_w(L, z);
        if (first_inc == cplx(0.0)) first_inc = inc;
        CHECK(std::abs(inc - first_inc) < 1e-10);  // constant in z
        CHECK(std::abs(inc - 2.0 * L.eta1) < 1e-10);
    }
    CHECK(std::abs(zeta_w(L, {0.5, 0.0}) - L.eta1) < 1e-12);
    CHECK(std::abs(zeta_w(L, {0.0, 0.5}) - L.eta2()) < 1e-12);
    // Legendre relation eta1*tau - eta2 = pi*i
    CHECK(std::abs(L.eta1 * L.tau() - L.eta2() - cplx(0.0, M_PI)) < 1e-12);
}

TEST_CASE("finite-difference consistency of wp' and wp''") {
    const TorusLattice L = build_lattice(1.0);
    auto fp = [&L](cplx z) { return wp(L, z); };
    auto fpp = [&L](cplx z) { return wp_prime(L, z); };
    auto g = oracle::rng(7u);
    for (int i = 0; i < 10; ++i) {
        const cplx z(oracle::rand_t(g), oracle::rand_t(g));
        if (lattice_distance(L, z) < 0.2) continue;
        CHECK(std::abs(oracle::cdiff(fp, z) - wp_prime(L, z)) < 1e-6);
        CHECK(std::abs(oracle::cdiff(fpp, z) - wp_second(L, z)) < 1e-6);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(build_lattice(0.0), NonPositiveTau);
    CHECK_THROWS_AS(build_lattice(-2.0), NonPositiveTau);
    CHECK_THROWS_AS(build_lattice(1.0, 4), std::invalid_argument);
    const TorusLattice L = build_lattice(1.0);
    CHECK_THROWS_AS(wp(L, {0.0, 0.0}), PoleProximity);
    CHECK_THROWS_AS(wp(L, {1.0, 1e-13}), PoleProximity);
    CHECK_THROWS_AS(zeta_w(L, {2.0, 3.0}), PoleProximity);
}
