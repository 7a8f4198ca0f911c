#include "eopk/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eopk/errors.hpp"
#include "eopk/numerics.hpp"

namespace eopk {

namespace {

double lookup(const std::map<int, double>& m, int k, double fallback = 0.0) {
    auto it = m.find(k);
    return it == m.end() ? fallback : it->second;
}

}  // namespace

double FiveTermCoefficients::at_a(int m) const { return lookup(a, m); }
double FiveTermCoefficients::at_b(int m) const { return lookup(b, m); }
double FiveTermCoefficients::at_c(int m) const { return lookup(c, m, m == 1 ? 1.0 : 0.0); }

double SevenTermCoefficients::at_p(int m) const { return lookup(p, m); }
double SevenTermCoefficients::at_q(int m) const { return lookup(q, m); }
double SevenTermCoefficients::at_r(int m) const { return lookup(r, m); }
double SevenTermCoefficients::at_s(int m) const { return lookup(s, m); }

std::array<std::array<double, 2>, 2> MatrixRecurrence::A(int m) const {
    return {{{coeffs->at_a(m), coeffs->at_b(m)}, {0.0, coeffs->at_a(m - 1)}}};
}

std::array<std::array<double, 2>, 2> MatrixRecurrence::Bm(int m) const {
    return {{{coeffs->at_c(m + 1), coeffs->at_b(m + 1)}, {coeffs->at_b(m + 1), coeffs->at_c(m)}}};
}

namespace {

// c_{k,n} = int wp pi_n pi_k w dt (or with wp' for the seven-term family).
double pairing(const EOPFamily& fam, int n, int k, bool prime) {
    const int pn = basis_position(n), pk = basis_position(k);
    if (pn < 0 || pk < 0) return 0.0;
    const auto& mult = prime ? fam.rule.wpp_t : fam.rule.wp_t;
    const std::size_t M = fam.rule.t.size();
    std::vector<double> weighted(M);
    for (std::size_t j = 0; j < M; ++j)
        weighted[j] = fam.rule.w[j] * fam.weight_vals[j] * mult[j] * fam.ortho_nodes[pn][j];
    return weighted_sum(weighted, fam.ortho_nodes[pk]);
}

bool member(int k, int N) { return k >= 0 && k != 1 && k <= N; }

}  // namespace

FiveTermCoefficients extract_five_term(const EOPFamily& fam) {
    const int N = fam.max_degree;
    if (N < 4) throw InsufficientDegree("extract_five_term needs max degree >= 4");
    FiveTermCoefficients out;
    for (int n = 0; n <= N; ++n) {
        if (n == 1) continue;
        // a_{n+1} = c_{n+2,n}
        if (member(n + 2, N)) {
            const double v = pairing(fam, n, n + 2, false);
            const double vt = pairing(fam, n + 2, n, false);
            out.max_asymmetry = std::max(out.max_asymmetry, std::abs(v - vt));
            out.a[n + 1] = 0.5 * (v + vt);
        }
        // b_{n+1} = c_{n+1,n}
        if (member(n + 1, N)) {
            const double v = pairing(fam, n, n + 1, false);
            const double vt = pairing(fam, n + 1, n, false);
            out.max_asymmetry = std::max(out.max_asymmetry, std::abs(v - vt));
            out.b[n + 1] = 0.5 * (v + vt);
        }
        out.c[n] = pairing(fam, n, n, false);
    }
    return out;
}

SevenTermCoefficients extract_seven_term(const EOPFamily& fam) {
    const int N = fam.max_degree;
    if (N < 5) throw InsufficientDegree("extract_seven_term needs max degree >= 5");
    SevenTermCoefficients out;
    for (int n = 0; n <= N; ++n) {
        if (n == 1) continue;
        if (member(n + 3, N)) {
            const double v = pairing(fam, n, n + 3, true);
            const double vt = pairing(fam, n + 3, n, true);
            out.max_asymmetry = std::max(out.max_asymmetry, std::abs(v - vt));
            out.p[n + 3] = 0.5 * (v + vt);
        }
        if (member(n + 2, N)) {
            const double v = pairing(fam, n, n + 2, true);
            const double vt = pairing(fam, n + 2, n, true);
            out.max_asymmetry = std::max(out.max_asymmetry, std::abs(v - vt));
            out.q[n + 2] = 0.5 * (v + vt);
        }
        if (member(n + 1, N)) {
            const double v = pairing(fam, n, n + 1, true);
            const double vt = pairing(fam, n + 1, n, true);
            out.max_asymmetry = std::max(out.max_asymmetry, std::abs(v - vt));
            out.r[n + 1] = 0.5 * (v + vt);
        }
        out.s[n] = pairing(fam, n, n, true);
    }
    return out;
}

double residual_five_term(const EOPFamily& fam, const FiveTermCoefficients& c5, int n, double t) {
    const int N = fam.max_degree;
    if (n < 2 || n > N - 2) throw InvalidDegree("five-term residual needs 2 <= n <= N-2");
    const double lhs = wp_gamma(fam.lattice, t) * eval_gamma(fam, n, t);
    const double rhs = c5.at_a(n + 1) * eval_gamma(fam, n + 2, t) +
                       c5.at_b(n + 1) * eval_gamma(fam, n + 1, t) +
                       c5.at_c(n) * eval_gamma(fam, n, t) +
                       c5.at_b(n) * eval_gamma(fam, n - 1, t) +
                       c5.at_a(n - 1) * eval_gamma(fam, n - 2, t);
    return std::abs(lhs - rhs);
}

double residual_seven_term(const EOPFamily& fam, const SevenTermCoefficients& c7, int n,
                           double t) {
    const int N = fam.max_degree;
    if (n < 0 || n == 1 || n > N - 3)
        throw InvalidDegree("seven-term residual needs 0 <= n <= N-3, n != 1");
    const double lhs = wp_prime_gamma(fam.lattice, t) * eval_gamma(fam, n, t);
    const double rhs = c7.at_p(n + 3) * eval_gamma(fam, n + 3, t) +
                       c7.at_q(n + 2) * eval_gamma(fam, n + 2, t) +
                       c7.at_r(n + 1) * eval_gamma(fam, n + 1, t) +
                       c7.at_s(n) * eval_gamma(fam, n, t) +
                       c7.at_r(n) * eval_gamma(fam, n - 1, t) +
                       c7.at_q(n) * eval_gamma(fam, n - 2, t) +
                       c7.at_p(n) * eval_gamma(fam, n - 3, t);
    return std::abs(lhs - rhs);
}

double matrix_recurrence_residual(const EOPFamily& fam, const MatrixRecurrence& M, int n,
                                  double t) {
    const int N = fam.max_degree;
    if (n < 0 || 2 * n + 3 > N)
        throw InvalidDegree("matrix recurrence residual needs 2n+3 <= N");
    auto Pi = [&](int m) -> std::array<double, 2> {
        if (m < 0) return {0.0, 0.0};
        return {eval_gamma(fam, 2 * m + 1, t), eval_gamma(fam, 2 * m, t)};
    };
    auto mul = [](const std::array<std::array<double, 2>, 2>& A, const std::array<double, 2>& x) {
        return std::array<double, 2>{A[0][0] * x[0] + A[0][1] * x[1],
                                     A[1][0] * x[0] + A[1][1] * x[1]};
    };
    auto transpose = [](std::array<std::array<double, 2>, 2> A) {
        std::swap(A[0][1], A[1][0]);
        return A;
    };
    const double p = wp_gamma(fam.lattice, t);
    const auto cur = Pi(n);
    const auto up = mul(M.A(2 * n + 2), Pi(n + 1));
    const auto mid = mul(M.Bm(2 * n), cur);
    const auto down = mul(transpose(M.A(2 * n)), Pi(n - 1));
    const double r0 = p * cur[0] - up[0] - mid[0] - down[0];
    const double r1 = p * cur[1] - up[1] - mid[1] - down[1];
    return std::hypot(r0, r1);
}

namespace {

// Column vectors over degrees 0..max_degree+6 (position = degree; degree 1 held at 0).
using Column = std::vector<double>;

Column apply_five(const FiveTermCoefficients& c5, const Column& x) {
    const int sz = static_cast<int>(x.size());
    Column y(sz, 0.0);
    auto get = [&](int k) { return (k >= 0 && k < sz) ? x[k] : 0.0; };
    for (int m = 0; m < sz; ++m) {
        if (m == 1) continue;  // pi_1 = 0
        y[m] = c5.at_a(m - 1) * get(m - 2) + c5.at_b(m) * get(m - 1) + c5.at_c(m) * get(m) +
               c5.at_b(m + 1) * get(m + 1) + c5.at_a(m + 1) * get(m + 2);
    }
    return y;
}

Column apply_seven(const SevenTermCoefficients& c7, const Column& x) {
    const int sz = static_cast<int>(x.size());
    Column y(sz, 0.0);
    auto get = [&](int k) { return (k >= 0 && k < sz) ? x[k] : 0.0; };
    for (int m = 0; m < sz; ++m) {
        if (m == 1) continue;
        y[m] = c7.at_p(m) * get(m - 3) + c7.at_q(m) * get(m - 2) + c7.at_r(m) * get(m - 1) +
               c7.at_s(m) * get(m) + c7.at_r(m + 1) * get(m + 1) + c7.at_q(m + 2) * get(m + 2) +
               c7.at_p(m + 3) * get(m + 3);
    }
    return y;
}

}  // namespace

double AppendixBReport::max_residual() const {
    return *std::max_element(residual.begin(), residual.end());
}

AppendixBReport verify_appendix_b(const FiveTermCoefficients& c5, const SevenTermCoefficients& c7,
                                  double g2, double g3, int n, int max_degree) {
    if (n < 0 || n == 1 || n + 6 > max_degree)
        throw IndexOutOfRange("verify_appendix_b needs 0 <= n <= N-6, n != 1 (got n=" +
                              std::to_string(n) + ")");
    const int sz = max_degree + 7;
    Column e(sz, 0.0);
    e[n] = 1.0;

    Column w1 = apply_five(c5, e);
    Column w2 = apply_five(c5, w1);
    Column w3 = apply_five(c5, w2);
    Column five(sz, 0.0);
    for (int m = 0; m < sz; ++m) five[m] = 4.0 * w3[m] - g2 * w1[m] - g3 * e[m];

    Column v1 = apply_seven(c7, e);
    Column seven = apply_seven(c7, v1);

    AppendixBReport rep;
    rep.n = n;
    for (int i = -6; i <= 6; ++i) {
        const int m = n + i;
        const double f = (m >= 0 && m < sz) ? five[m] : 0.0;
        const double s = (m >= 0 && m < sz) ? seven[m] : 0.0;
        rep.five_route[i + 6] = f;
        rep.seven_route[i + 6] = s;
        rep.residual[i + 6] = std::abs(f - s);
    }
    return rep;
}

ReconstructedFamily shohat_favard_reconstruct(const FiveTermCoefficients& c5,
                                              const SevenTermCoefficients& c7, double lambda1,
                                              int N, double g2, double g3) {
    if (!(lambda1 > 0.0)) throw std::invalid_argument("shohat_favard: lambda1 must be positive");
    if (N < 3) throw InsufficientDegree("shohat_favard_reconstruct needs N >= 3");
    const int dim = N;  // |{0, 2, ..., N}|

    // Multiplication by wp / wp' on basis-coefficient vectors:
    //   wp E_m = E_{m+2};  wp' E_{2k} = -2 E_{2k+3};
    //   wp' E_{2k+3} = -2 E_{2k+6} + (g2/2) E_{2k+2} + (g3/2) E_{2k}.
    auto mul_wp = [&](const std::vector<double>& x) {
        std::vector<double> y(dim, 0.0);
        for (int pos = 0; pos < dim; ++pos) {
            if (x[pos] == 0.0) continue;
            const int deg = basis_degree_at(pos);
            const int tp = basis_position(deg + 2);
            if (tp < dim) y[tp] += x[pos];
        }
        return y;
    };
    auto mul_wpp = [&](const std::vector<double>& x) {
        std::vector<double> y(dim, 0.0);
        for (int pos = 0; pos < dim; ++pos) {
            if (x[pos] == 0.0) continue;
            const int deg = basis_degree_at(pos);
            const int up = basis_position(deg + 3);
            if (deg % 2 == 0) {
                if (up < dim) y[up] += -2.0 * x[pos];
            } else {
                if (up < dim) y[up] += -2.0 * x[pos];
                y[basis_position(deg - 1)] += 0.5 * g2 * x[pos];
                y[basis_position(deg - 3)] += 0.5 * g3 * x[pos];
            }
        }
        return y;
    };
    auto axpy = [&](std::vector<double>& y, double alpha, const std::vector<double>& x) {
        for (int i = 0; i < dim; ++i) y[i] += alpha * x[i];
    };

    ReconstructedFamily out;
    out.max_degree = N;
    out.ortho_coeffs.assign(dim, std::vector<double>(dim, 0.0));
    auto pi = [&](int deg) -> std::vector<double>& { return out.ortho_coeffs[basis_position(deg)]; };
    const std::vector<double> zero(dim, 0.0);
    auto pi_or_zero = [&](int deg) -> const std::vector<double>& {
        if (deg < 0 || deg == 1) return zero;
        return pi(deg);
    };

    pi(0)[0] = 1.0 / std::sqrt(lambda1);

    // pi_2 from the five-term row of pi_0: wp pi_0 = a_1 pi_2 + c_0 pi_0.
    {
        const double a1 = c5.at_a(1);
        if (!(a1 > 0.0)) throw InconsistentCoefficients("a_1 must be positive");
        std::vector<double> rhs = mul_wp(pi(0));
        axpy(rhs, -c5.at_c(0), pi(0));
        axpy(rhs, -c5.at_b(1), pi_or_zero(1));
        for (int i = 0; i < dim; ++i) pi(2)[i] = rhs[i] / a1;
    }
    // pi_3 from the seven-term row of pi_0: wp' pi_0 = p_3 pi_3 + q_2 pi_2 + s_0 pi_0.
    {
        const double p3 = c7.at_p(3);
        if (p3 == 0.0) throw InconsistentCoefficients("p_3 must be nonzero");
        std::vector<double> rhs = mul_wpp(pi(0));
        axpy(rhs, -c7.at_q(2), pi(2));
        axpy(rhs, -c7.at_s(0), pi(0));
        axpy(rhs, -c7.at_r(1), pi_or_zero(1));
        for (int i = 0; i < dim; ++i) pi(3)[i] = rhs[i] / p3;
    }
    // Higher degrees from the five-term rows:
    // a_{n-1} pi_n = (wp - c_{n-2}) pi_{n-2} - b_{n-1} pi_{n-1} - b_{n-2} pi_{n-3}
    //               - a_{n-3} pi_{n-4}.
    for (int n = 4; n <= N; ++n) {
        const double an1 = c5.at_a(n - 1);
        if (!(an1 > 0.0))
            throw InconsistentCoefficients("a_" + std::to_string(n - 1) + " must be positive");
        std::vector<double> rhs = mul_wp(pi_or_zero(n - 2));
        axpy(rhs, -c5.at_c(n - 2), pi_or_zero(n - 2));
        axpy(rhs, -c5.at_b(n - 1), pi_or_zero(n - 1));
        axpy(rhs, -c5.at_b(n - 2), pi_or_zero(n - 3));
        axpy(rhs, -c5.at_a(n - 3), pi_or_zero(n - 4));
        for (int i = 0; i < dim; ++i) pi(n)[i] = rhs[i] / an1;
    }

    // Consistency of every unused seven-term row (m = 1 rows included: they pin
    // the structural zeros q_3, r_2, p_4).
    double worst = 0.0;
    for (int m = 1; m + 3 <= N; ++m) {  // m = 0 was used to build pi_3
        std::vector<double> resid = mul_wpp(pi_or_zero(m));
        axpy(resid, -c7.at_p(m + 3), pi_or_zero(m + 3));
        axpy(resid, -c7.at_q(m + 2), pi_or_zero(m + 2));
        axpy(resid, -c7.at_r(m + 1), pi_or_zero(m + 1));
        axpy(resid, -c7.at_s(m), pi_or_zero(m));
        axpy(resid, -c7.at_r(m), pi_or_zero(m - 1));
        axpy(resid, -c7.at_q(m), pi_or_zero(m - 2));
        axpy(resid, -c7.at_p(m), pi_or_zero(m - 3));
        for (double v : resid) worst = std::max(worst, std::abs(v));
    }
    out.consistency_residual = worst;
    if (worst > 1e-5)
        throw InconsistentCoefficients(
            "seven-term consistency residual " + std::to_string(worst) +
            " exceeds 1e-5; coefficients do not arise from an EOP family");
    return out;
}

}  // namespace eopk
