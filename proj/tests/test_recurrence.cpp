#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eopk/errors.hpp"
#include "eopk/numerics.hpp"
#include "eopk/recurrence.hpp"
#include "oracles.hpp"

using namespace eopk;

namespace {

EOPFamily make_family(const char* weight, int N, int quad = 256) {
    const TorusLattice L = build_lattice(1.0);
    return gram_schmidt(L, WeightSpec::parse(weight), build_rule(L, quad), N);
}

// Direct quadrature pairing int m(t) pi_n pi_k w dt (test-side oracle).
double pair_oracle(const EOPFamily& fam, int n, int k, bool prime) {
    const auto& rule = fam.rule;
    std::vector<double> prod(rule.t.size());
    for (std::size_t j = 0; j < rule.t.size(); ++j) {
        const double m = prime ? rule.wpp_t[j] : rule.wp_t[j];
        prod[j] = rule.w[j] * fam.weight_vals[j] * m * eval_gamma(fam, n, rule.t[j]) *
                  eval_gamma(fam, k, rule.t[j]);
    }
    return accumulate(prod);
}

}  // namespace

TEST_CASE("five-term extraction identities") {
    for (const char* spec : {"unity", "exp_pp:0.3"}) {
        const EOPFamily fam = make_family(spec, 8);
        const FiveTermCoefficients c5 = extract_five_term(fam);
        CHECK(c5.max_asymmetry < 1e-9);
        // a_{n+1} = sqrt(h_{n+2}/h_n)
        for (int n : {0, 2, 3, 4, 5, 6}) {
            CHECK(c5.at_a(n + 1) ==
                  doctest::Approx(std::sqrt(fam.norm(n + 2) / fam.norm(n))).epsilon(1e-8));
            CHECK(c5.at_a(n + 1) > 0.0);
        }
        // c_{k,n} = 0 for k < n - 2
        for (int n : {5, 6, 7, 8})
            for (int k = 0; k < n - 2; ++k) {
                if (k == 1) continue;
                CHECK(std::abs(pair_oracle(fam, n, k, false)) < 1e-9);
            }
    }
}

TEST_CASE("symmetric weight: b vanishes") {
    const EOPFamily fam = make_family("exp_p:0.5", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    for (const auto& [k, v] : c5.b) {
        (void)k;
        CHECK(std::abs(v) < 1e-9);
    }
}

TEST_CASE("seven-term extraction identities") {
    const EOPFamily fam = make_family("exp_pp:0.3", 8);
    const SevenTermCoefficients c7 = extract_seven_term(fam);
    for (int n : {0, 2, 3, 4, 5}) {
        const double expect = -2.0 * std::sqrt(fam.norm(n + 3) / fam.norm(n));
        CHECK(c7.at_p(n + 3) == doctest::Approx(expect).epsilon(1e-8));
        CHECK(c7.at_p(n + 3) < 0.0);
    }
    // int wp' pi_n pi_k w = 0 for k < n - 3
    for (int n : {6, 7, 8})
        for (int k = 0; k < n - 3; ++k) {
            if (k == 1) continue;
            CHECK(std::abs(pair_oracle(fam, n, k, true)) < 1e-9);
        }
    // symmetric weight: q and s vanish
    const EOPFamily fs = make_family("exp_p:0.5", 8);
    const SevenTermCoefficients c7s = extract_seven_term(fs);
    for (const auto& [k, v] : c7s.q) {
        (void)k;
        CHECK(std::abs(v) < 1e-9);
    }
    for (const auto& [k, v] : c7s.s) {
        (void)k;
        CHECK(std::abs(v) < 1e-9);
    }
}

TEST_CASE("five-term residuals on gamma") {
    const EOPFamily fam = make_family("unity", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    auto g = oracle::rng(11u);
    for (int n = 2; n <= 6; ++n)
        for (int i = 0; i < 50; ++i) CHECK(residual_five_term(fam, c5, n, oracle::rand_t(g)) < 1e-8);

    // n = 2: the b_2 pi_1 term contributes nothing
    CHECK(residual_five_term(fam, c5, 2, 0.37) < 1e-8);

    // perturbation sensitivity: residual of (a_{n+1} + 0.1) is O(0.1 |pi_{n+2}|)
    FiveTermCoefficients bad = c5;
    bad.a[5] += 0.1;
    const double t0 = 0.37;
    const double expected = 0.1 * std::abs(eval_gamma(fam, 6, t0));
    CHECK(residual_five_term(fam, bad, 4, t0) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("seven-term residuals on gamma") {
    const EOPFamily fam = make_family("exp_pp:0.3", 8);
    const SevenTermCoefficients c7 = extract_seven_term(fam);
    auto g = oracle::rng(13u);
    for (int n : {0, 2, 3, 4, 5})
        for (int i = 0; i < 30; ++i)
            CHECK(residual_seven_term(fam, c7, n, oracle::rand_t(g)) < 1e-8);
    SevenTermCoefficients bad = c7;
    bad.q[4] += 0.05;
    CHECK(residual_seven_term(fam, bad, 2, 0.41) ==
          doctest::Approx(0.05 * std::abs(eval_gamma(fam, 4, 0.41))).epsilon(1e-5));
}

TEST_CASE("matrix three-term recurrence") {
    const EOPFamily fam = make_family("exp_pp:0.3", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    const MatrixRecurrence M{&c5};
    auto g = oracle::rng(29u);
    for (int n : {0, 1, 2})
        for (int i = 0; i < 20; ++i)
            CHECK(matrix_recurrence_residual(fam, M, n, oracle::rand_t(g)) < 1e-8);

    // the vector residual packages the two scalar five-term rows
    const double t0 = 0.61;
    const double r1 = residual_five_term(fam, c5, 4, t0);  // row of pi_4 in Pi_4
    const double rv = matrix_recurrence_residual(fam, M, 2, t0);
    CHECK(rv >= r1 - 1e-12);

    FiveTermCoefficients bad = c5;
    bad.c[4] += 0.1;
    const MatrixRecurrence Mbad{&bad};
    CHECK(matrix_recurrence_residual(fam, Mbad, 2, t0) > 0.01);
}

TEST_CASE("appendix-B cross-table identities") {
    for (const char* spec : {"unity", "exp_pp:0.3"}) {
        const EOPFamily fam = make_family(spec, 8);
        const FiveTermCoefficients c5 = extract_five_term(fam);
        const SevenTermCoefficients c7 = extract_seven_term(fam);
        const TorusLattice& L = fam.lattice;
        for (int n : {0, 2}) {
            const AppendixBReport rep = verify_appendix_b(c5, c7, L.g2, L.g3, n, 8);
            CHECK(rep.max_residual() < 1e-7);
            // the +-6 offsets in closed form
            CHECK(rep.five_route[12] ==
                  doctest::Approx(4.0 * c5.at_a(n + 1) * c5.at_a(n + 3) * c5.at_a(n + 5))
                      .epsilon(1e-12));
            CHECK(rep.seven_route[12] ==
                  doctest::Approx(c7.at_p(n + 3) * c7.at_p(n + 6)).epsilon(1e-12));
        }
        CHECK_THROWS_AS(verify_appendix_b(c5, c7, L.g2, L.g3, 3, 8), IndexOutOfRange);
        CHECK_THROWS_AS(verify_appendix_b(c5, c7, L.g2, L.g3, 1, 8), IndexOutOfRange);
    }
}

TEST_CASE("appendix-B at a fully interior index (N = 14, n = 8)") {
    // All 13 offsets land on genuine members (n - 6 = 2), so every entry of
    // both routes is nontrivial for a non-symmetric weight.
    const EOPFamily fam = make_family("exp_pp:0.3", 14);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    const SevenTermCoefficients c7 = extract_seven_term(fam);
    const AppendixBReport rep = verify_appendix_b(c5, c7, fam.lattice.g2, fam.lattice.g3, 8, 14);
    CHECK(rep.max_residual() < 1e-7);
    for (int i = 0; i < 13; ++i) CHECK(std::abs(rep.five_route[i]) > 1.0);
    // B_{n-6} = 4 a_{n-5} a_{n-3} a_{n-1} = p_n p_{n-3}
    CHECK(rep.five_route[0] ==
          doctest::Approx(4.0 * c5.at_a(3) * c5.at_a(5) * c5.at_a(7)).epsilon(1e-12));
    CHECK(rep.seven_route[0] == doctest::Approx(c7.at_p(8) * c7.at_p(5)).epsilon(1e-12));

    // symmetric weight: all odd-offset B's vanish
    const EOPFamily fs = make_family("exp_p:0.5", 12);
    const AppendixBReport rs = verify_appendix_b(extract_five_term(fs), extract_seven_term(fs),
                                                 fs.lattice.g2, fs.lattice.g3, 6, 12);
    CHECK(rs.max_residual() < 1e-7);
    for (int i = -5; i <= 5; i += 2) CHECK(std::abs(rs.five_route[i + 6]) < 1e-8);
}

TEST_CASE("Shohat-Favard round trip") {
    for (const char* spec : {"unity", "exp_p:0.5", "exp_pp:0.3"}) {
        const EOPFamily fam = make_family(spec, 8);
        const FiveTermCoefficients c5 = extract_five_term(fam);
        const SevenTermCoefficients c7 = extract_seven_term(fam);
        const ReconstructedFamily rec =
            shohat_favard_reconstruct(c5, c7, fam.norm(0), 8, fam.lattice.g2, fam.lattice.g3);
        CHECK(rec.consistency_residual < 1e-7);
        double worst = 0.0;
        for (int pos = 0; pos < fam.dim(); ++pos) {
            const auto mine = fam.ortho_coeffs(basis_degree_at(pos));
            for (int k = 0; k < fam.dim(); ++k)
                worst = std::max(worst, std::abs(mine[k] - rec.ortho_coeffs[pos][k]));
        }
        CHECK(worst < 1e-7);
    }
}

TEST_CASE("Shohat-Favard rejects inconsistent coefficients") {
    const EOPFamily fam = make_family("unity", 8);
    const FiveTermCoefficients c5 = extract_five_term(fam);
    SevenTermCoefficients c7 = extract_seven_term(fam);
    // q_3 is a structural zero (it couples through pi_1); perturbing it makes the
    // pi_1 seven-term row inconsistent.
    c7.q[3] = 0.05;
    CHECK_THROWS_AS(
        shohat_favard_reconstruct(c5, c7, fam.norm(0), 8, fam.lattice.g2, fam.lattice.g3),
        InconsistentCoefficients);
}
