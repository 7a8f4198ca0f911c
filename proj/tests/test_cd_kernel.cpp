#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eopk/cd_kernel.hpp"
#include "eopk/errors.hpp"
#include "eopk/numerics.hpp"
#include "eopk/zeros.hpp"
#include "oracles.hpp"

using namespace eopk;

namespace {

EOPFamily make_family(const char* weight, int N, int quad = 256) {
    const TorusLattice L = build_lattice(1.0);
    return gram_schmidt(L, WeightSpec::parse(weight), build_rule(L, quad), N);
}

}  // namespace

TEST_CASE("sum form basics") {
    const EOPFamily fam = make_family("unity", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    const CDKernel K2 = make_cd_kernel(fam, c5, 2);
    // n = 2: single term pi_0(x) pi_0(y) = 1/h_0
    CHECK(kernel_sum(K2, 0.3, 0.7) == doctest::Approx(1.0 / fam.norm(0)).epsilon(1e-12));
    const CDKernel K8 = make_cd_kernel(fam, c5, 8);
    auto g = oracle::rng(2u);
    for (int i = 0; i < 10; ++i) {
        const double x = oracle::rand_t(g), y = oracle::rand_t(g);
        CHECK(kernel_sum(K8, x, y) == kernel_sum(K8, y, x));  // exact symmetry
    }
}

TEST_CASE("closed form agrees with the sum off the diagonal band") {
    for (const char* spec : {"unity", "exp_pp:0.3"}) {
        const EOPFamily fam = make_family(spec, 8);
        const FiveTermCoefficients c5 = extract_five_term(fam);
        for (int n = 4; n <= 8; ++n) {
            const CDKernel K = make_cd_kernel(fam, c5, n);
            for (int i = 0; i < 20; ++i)
                for (int j = 0; j < 20; ++j) {
                    const double x = (i + 0.5) / 20.0, y = (j + 0.5) / 20.0;
                    if (std::abs(wp_gamma(fam.lattice, x) - wp_gamma(fam.lattice, y)) < 1e-4)
                        continue;
                    CHECK(std::abs(kernel_cd(K, x, y) - kernel_sum(K, x, y)) < 1e-8);
                }
        }
    }
}

TEST_CASE("near-diagonal calls delegate to the sum") {
    const EOPFamily fam = make_family("unity", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    const CDKernel K = make_cd_kernel(fam, c5, 6);
    const double x = 0.31;
    const double v = kernel_cd(K, x, 1.0 - x);  // mirror point: wp(x) == wp(1-x)
    CHECK(K.near_confluent_count == 1);
    CHECK(v == doctest::Approx(kernel_sum(K, x, 1.0 - x)).epsilon(1e-14));
}

TEST_CASE("symmetric weight: the b bracket drops") {
    const EOPFamily fam = make_family("exp_p:0.5", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    const int n = 6;
    const CDKernel K = make_cd_kernel(fam, c5, n);
    auto g = oracle::rng(6u);
    for (int i = 0; i < 10; ++i) {
        const double x = oracle::rand_t(g), y = oracle::rand_t(g);
        const double px = wp_gamma(fam.lattice, x), py = wp_gamma(fam.lattice, y);
        if (std::abs(px - py) < 1e-3) continue;
        auto bracket = [&](int a, int b) {
            return eval_gamma(fam, a, x) * eval_gamma(fam, b, y) -
                   eval_gamma(fam, a, y) * eval_gamma(fam, b, x);
        };
        const double two_brackets =
            (c5.at_a(n - 1) * bracket(n, n - 2) + c5.at_a(n - 2) * bracket(n - 1, n - 3)) /
            (px - py);
        CHECK(kernel_cd(K, x, y) == doctest::Approx(two_brackets).epsilon(1e-10));
    }
}

TEST_CASE("confluent form matches the sum on the diagonal") {
    for (const char* spec : {"unity", "exp_pp:0.3"}) {
        const EOPFamily fam = make_family(spec, 8);
        const FiveTermCoefficients c5 = extract_five_term(fam);
        for (int n = 4; n <= 8; ++n) {
            const CDKernel K = make_cd_kernel(fam, c5, n);
            auto g = oracle::rng(31u);
            for (int i = 0; i < 20; ++i) {
                const double x = oracle::rand_t(g);
                if (std::abs(wp_prime_gamma(fam.lattice, x)) <= 1e-6) continue;
                const double v = kernel_confluent(K, x);
                CHECK(std::abs(v - kernel_sum(K, x, x)) < 1e-7);
                CHECK(v > 0.0);  // sum of squares
            }
        }
    }
}

TEST_CASE("confluent limit of the closed form (Richardson in h)") {
    const EOPFamily fam = make_family("unity", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    const CDKernel K = make_cd_kernel(fam, c5, 6);
    const double x = 0.31;
    const double v1 = kernel_cd(K, x, x + 1e-3);
    const double v2 = kernel_cd(K, x, x + 1e-4);
    // linear extrapolation through h = 1e-3, 1e-4; remainder is O(h1 h2)
    const double extrap = (1e-3 * v2 - 1e-4 * v1) / (1e-3 - 1e-4);
    CHECK(extrap == doctest::Approx(kernel_confluent(K, x)).epsilon(1e-4));
}

TEST_CASE("degenerate points") {
    const EOPFamily fam = make_family("exp_pp:0.3", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    // kernel_sum(x,x) > 0 at the midpoint (1+tau)/2
    const CDKernel K6 = make_cd_kernel(fam, c5, 6);
    CHECK(kernel_sum(K6, 0.5, 0.5) > 0.0);

    // ratio of the second-derivative form to the sum is constant (= 1) across n
    double ratios[5];
    int k = 0;
    for (int n = 4; n <= 8; ++n) {
        const CDKernel K = make_cd_kernel(fam, c5, n);
        ratios[k++] = kernel_degenerate(K, 0.5) / kernel_sum(K, 0.5, 0.5);
    }
    for (int i = 0; i < 5; ++i) {
        CHECK(ratios[i] == doctest::Approx(ratios[0]).epsilon(1e-9));
        CHECK(ratios[i] == doctest::Approx(1.0).epsilon(1e-9));
    }

    // the closed form converges to the sum value as y approaches a degenerate x
    const double s = kernel_sum(K6, 0.5, 0.5);
    const double d1 = std::abs(kernel_cd(K6, 0.5, 0.5 + 2e-2) - s);
    const double d2 = std::abs(kernel_cd(K6, 0.5, 0.5 + 1e-2) - s);
    CHECK(d2 < d1);

    CHECK_THROWS_AS(kernel_degenerate(K6, 0.31), NotDegenerate);
    CHECK_THROWS_AS(kernel_confluent(K6, 0.5), DegeneratePoint);
    CHECK(kernel_degenerate(K6, 0.0) == doctest::Approx(kernel_sum(K6, 0.0, 0.0)).epsilon(1e-9));
}

TEST_CASE("correlation kernel: trace, reproducing, positivity") {
    for (const char* spec : {"unity", "exp_p:0.5", "exp_pp:0.3"}) {
        const EOPFamily fam = make_family(spec, 8);
        for (int n : {3, 5, 7}) {
            CHECK(std::abs(kernel_trace(fam, n) - member_count(n)) < 1e-6);
        }
        auto g = oracle::rng(41u);
        for (int i = 0; i < 10; ++i)
            CHECK(reproducing_residual(fam, 6, oracle::rand_t(g), oracle::rand_t(g)) < 1e-7);
        for (int trial = 0; trial < 20; ++trial) {
            const int m = 2 + trial % 3;
            std::vector<double> pts;
            for (int k = 0; k < m; ++k) pts.push_back(oracle::rand_t(g));
            CHECK(correlation_determinant(fam, 6, pts) >= -1e-10);
        }
    }
}

TEST_CASE("determinant equals the squared-matrix identity") {
    const EOPFamily fam = make_family("exp_p:0.5", 8);
    auto g = oracle::rng(43u);
    // kernel with member count 3 (degrees {0,2,3}): n = 4
    const int n = 4;
    const int degs[3] = {0, 2, 3};
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> pts = {oracle::rand_t(g), oracle::rand_t(g), oracle::rand_t(g)};
        const double det = correlation_determinant(fam, n, pts);
        std::vector<double> m(9);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                m[i * 3 + k] = std::sqrt(eval_weight_t(fam.weight, fam.lattice, pts[i])) *
                               eval_gamma(fam, degs[k], pts[i]);
        const double sq = lu_det(m, 3).det;
        CHECK(det == doctest::Approx(sq * sq).epsilon(1e-6));
        CHECK(det >= -1e-10);
    }
}

TEST_CASE("joint pdf") {
    const EOPFamily fam = make_family("unity", 8);
    // permutation invariance is exact (determinant row/col swaps)
    const std::vector<double> pts = {0.21, 0.55, 0.83};
    const std::vector<double> perm = {0.55, 0.83, 0.21};
    CHECK(joint_pdf(fam, 3, pts) == doctest::Approx(joint_pdf(fam, 3, perm)).epsilon(1e-12));
    // n = 1: pdf = w(x) pi_0(x)^2
    const double x = 0.37;
    CHECK(joint_pdf(fam, 1, {x}) ==
          doctest::Approx(eval_weight_t(fam.weight, fam.lattice, x) *
                          eval_gamma(fam, 0, x) * eval_gamma(fam, 0, x))
              .epsilon(1e-12));
    CHECK(joint_pdf(fam, 2, {0.3, 0.6}) >= -1e-10);
    CHECK_THROWS_AS(joint_pdf(fam, 2, {0.4, 0.4}), DuplicatePoints);

    // normalization: the 2-point density integrates to 1 (tensor quadrature)
    std::vector<double> gx, gw;
    gauss_legendre(96, gx, gw);
    double total = 0.0;
    for (int i = 0; i < 96; ++i)
        for (int j = 0; j < 96; ++j) {
            const double a = 0.5 * (gx[i] + 1.0), b = 0.5 * (gx[j] + 1.0);
            if (std::abs(a - b) < 1e-14) continue;
            total += 0.25 * gw[i] * gw[j] * joint_pdf(fam, 2, {a, b});
        }
    CHECK(std::abs(total - 1.0) < 1e-5);
}

TEST_CASE("pentadiagonal compressed eigenvalue residual at kernel zeros") {
    const EOPFamily fam = make_family("exp_pp:0.3", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    for (int n : {4, 5, 6}) {
        const ZeroSet zs = find_gamma_zeros(fam, n + 1);
        for (double t : zs.gamma_zeros)
            CHECK(pentadiagonal_residual(fam, c5, n, t) < 1e-7);
    }
}
