#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "eopk/errors.hpp"
#include "eopk/quadrature.hpp"
#include "oracles.hpp"

using namespace eopk;

TEST_CASE("weight DSL") {
    CHECK(WeightSpec::parse("unity").kind == WeightKind::Unity);
    CHECK(WeightSpec::parse("exp_p:0.5").param == doctest::Approx(0.5));
    CHECK(WeightSpec::parse("exp_pp:-0.25").param == doctest::Approx(-0.25));
    const WeightSpec prod = WeightSpec::parse("prod(exp_p:0.5, exp_pp:0.3)");
    CHECK(prod.kind == WeightKind::Product);
    CHECK(prod.factors.size() == 2);
    CHECK(WeightSpec::parse(prod.to_string()).factors[1].param == doctest::Approx(0.3));

    CHECK(WeightSpec::parse("unity").symmetric());
    CHECK(WeightSpec::parse("exp_p:2.0").symmetric());
    CHECK_FALSE(WeightSpec::parse("exp_pp:0.3").symmetric());
    CHECK(WeightSpec::parse("prod(unity,exp_p:1)").symmetric());
    CHECK_FALSE(WeightSpec::parse("prod(exp_p:1,exp_pp:0.1)").symmetric());

    CHECK_THROWS_AS(WeightSpec::parse("gauss"), std::invalid_argument);
    CHECK_THROWS_AS(WeightSpec::parse("exp_p"), std::invalid_argument);
    CHECK_THROWS_AS(WeightSpec::parse("prod(unity)"), std::invalid_argument);
    CHECK_THROWS_AS(WeightSpec::parse("unity trailing"), std::invalid_argument);
}

TEST_CASE("rule construction and exactness") {
    const TorusLattice L = build_lattice(1.0);
    const QuadratureRule rule = build_rule(L, 256);
    const double wsum = std::accumulate(rule.w.begin(), rule.w.end(), 0.0);
    CHECK(std::abs(wsum - 1.0) < 1e-14);  // int_gamma 1 dz = 1
    for (double t : rule.t) {
        CHECK(t > 0.0);
        CHECK(t < 1.0);
    }
    CHECK(rule.max_imag_residue < 1e-9);
    CHECK_THROWS_AS(build_rule(L, 2), std::invalid_argument);
}

TEST_CASE("node-doubling self-convergence of int wp") {
    const TorusLattice L = build_lattice(1.0);
    for (int N : {64, 128, 256}) {
        const QuadratureRule r1 = build_rule(L, N);
        const QuadratureRule r2 = build_rule(L, 2 * N);
        double i1 = 0.0, i2 = 0.0;
        for (int j = 0; j < r1.order; ++j) i1 += r1.w[j] * r1.wp_t[j];
        for (int j = 0; j < r2.order; ++j) i2 += r2.w[j] * r2.wp_t[j];
        CHECK(std::abs(i1 - i2) < 1e-12);
    }
    const QuadratureRule rule = build_converged_rule(L, WeightSpec::unity(), 12);
    CHECK(rule.order == 256);
}

TEST_CASE("weight evaluation") {
    const TorusLattice L = build_lattice(1.0);
    CHECK(eval_weight(WeightSpec::unity(), L, {0.37, 0.5}) == 1.0);
    // wp is even about the midpoint of gamma
    const WeightSpec wp_w = WeightSpec::exp_p(0.5);
    CHECK(eval_weight_t(wp_w, L, 0.2) == doctest::Approx(eval_weight_t(wp_w, L, 0.8)).epsilon(1e-12));
    // wp' is odd about the midpoint: mirror values differ for beta != 0
    const WeightSpec pp_w = WeightSpec::exp_pp(0.3);
    CHECK(std::abs(eval_weight_t(pp_w, L, 0.2) - eval_weight_t(pp_w, L, 0.8)) > 1e-3);
    CHECK_THROWS_AS(eval_weight(wp_w, L, {0.3, 0.2}), OffContour);
}

TEST_CASE("inner products") {
    const TorusLattice L = build_lattice(1.0);
    const QuadratureRule rule = build_rule(L, 256);
    const auto wv = weight_nodes(WeightSpec::unity(), L, rule);
    auto one = [](double) { return 1.0; };
    CHECK(inner_product(rule, wv, one, one) == doctest::Approx(1.0).epsilon(1e-14));
    auto f = [&L](double t) { return wp_gamma(L, t); };
    auto g = [&L](double t) { return wp_prime_gamma(L, t); };
    CHECK(inner_product(rule, wv, f, g) == inner_product(rule, wv, g, f));  // same order
    const MomentTable tab = compute_moments(rule, WeightSpec::unity(), L, 6);
    CHECK(inner_product(rule, wv, f, one) == doctest::Approx(tab.nu[1]).epsilon(1e-13));
}

TEST_CASE("unity moments against closed forms") {
    const TorusLattice L = build_lattice(1.0);
    const QuadratureRule rule = build_rule(L, 256);
    const MomentTable tab = compute_moments(rule, WeightSpec::unity(), L, 8);
    CHECK(tab.nu[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tab.nu[1] == doctest::Approx(oracle::frozen_tau_i::nu1).epsilon(1e-13));
    CHECK(tab.nu[2] == doctest::Approx(oracle::frozen_tau_i::nu2).epsilon(1e-13));
    CHECK(tab.nu[3] == doctest::Approx(oracle::frozen_tau_i::nu3).epsilon(1e-13));
}

TEST_CASE("nuhat relation: corrected constant holds, printed constant fails") {
    const TorusLattice L = build_lattice(1.0);
    const QuadratureRule rule = build_rule(L, 256);
    for (const char* spec : {"unity", "exp_p:0.5", "exp_pp:0.3"}) {
        const WeightSpec w = WeightSpec::parse(spec);
        const MomentTable tab = compute_moments(rule, w, L, 9);
        for (int k = 0; k <= 6; ++k) {
            const double corrected =
                tab.nu[k + 3] - 0.25 * L.g2 * tab.nu[k + 1] - 0.25 * L.g3 * tab.nu[k];
            CHECK(std::abs(tab.nuhat[k] - corrected) < 1e-9 * std::max(1.0, std::abs(corrected)));
        }
        // The printed relation nuhat_k = 4(nu_{k+3} - g2 nu_{k+1} - g3 nu_k) does
        // not hold under either curve normalization.
        const double printed = 4.0 * (tab.nu[3] - L.g2 * tab.nu[1] - L.g3 * tab.nu[0]);
        CHECK(std::abs(tab.nuhat[0] - printed) > 1.0);
    }
}

TEST_CASE("Hankel determinants") {
    const TorusLattice L = build_lattice(1.0);
    const QuadratureRule rule = build_rule(L, 256);
    const MomentTable tab = compute_moments(rule, WeightSpec::unity(), L, 12);
    CHECK(tab.hankel[0] == 1.0);
    CHECK(tab.hankel_hat[0] == 1.0);
    CHECK(tab.hankel[1] == doctest::Approx(tab.nu[0]).epsilon(1e-14));  // Delta_1 = nu_0

    // Positive definiteness oracle: Cholesky of the k x k Hankel matrix.
    auto cholesky_pd = [&tab](int k, bool hat) {
        std::vector<double> a(k * k);
        const auto& mu = hat ? tab.nuhat : tab.nu;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) a[i * k + j] = mu[i + j];
        for (int c = 0; c < k; ++c) {
            for (int r = 0; r < c; ++r) a[c * k + c] -= a[c * k + r] * a[c * k + r];
            if (a[c * k + c] <= 0.0) return false;
            a[c * k + c] = std::sqrt(a[c * k + c]);
            for (int r = c + 1; r < k; ++r) {
                for (int s = 0; s < c; ++s) a[r * k + c] -= a[r * k + s] * a[c * k + s];
                a[r * k + c] /= a[c * k + c];
            }
        }
        return true;
    };
    for (int k = 1; k <= 6; ++k) {
        CHECK(cholesky_pd(k, false));
        CHECK(cholesky_pd(k, true));
        CHECK(tab.hankel[k] > 0.0);
        CHECK(tab.hankel_hat[k] > 0.0);
    }
}

TEST_CASE("symmetric weights kill odd integrands") {
    const TorusLattice L = build_lattice(1.0);
    const QuadratureRule rule = build_rule(L, 256);
    for (const char* spec : {"unity", "exp_p:0.5"}) {
        const auto wv = weight_nodes(WeightSpec::parse(spec), L, rule);
        for (int k = 0; k <= 5; ++k) {
            double s = 0.0;
            for (int j = 0; j < rule.order; ++j)
                s += rule.w[j] * wv[j] * rule.wpp_t[j] * std::pow(rule.wp_t[j], k);
            CHECK(std::abs(s) < 1e-10);
        }
    }
}
