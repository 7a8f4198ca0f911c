#include "eopk/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "eopk/errors.hpp"

namespace eopk {

namespace {

double wrap01(double t) {
    t -= std::floor(t);
    return t;
}

// Bisection + Newton polish of a bracketed sign change of f on [lo, hi].
template <typename F, typename DF>
double refine_zero(F f, DF df, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 80 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        const double d = df(t);
        if (d == 0.0) break;
        const double step = f(t) / d;
        const double tn = t - step;
        if (tn <= lo || tn >= hi) break;  // keep the bisection bracket
        t = tn;
        if (std::abs(step) < 1e-15) break;
    }
    return t;
}

int expected_gamma_count(int n) { return n % 2 == 0 ? n : n - 1; }

std::vector<double> scan_gamma(const EOPFamily& fam, int n, int M) {
    auto f = [&](double t) { return eval_gamma(fam, n, wrap01(t)); };
    auto df = [&](double t) { return eval_gamma_d1(fam, n, wrap01(t)); };
    std::vector<double> vals(M);
    for (int i = 0; i < M; ++i) vals[i] = f((i + 0.5) / M);
    std::vector<double> zeros;
    for (int i = 0; i < M; ++i) {
        const double a = vals[i], b = vals[(i + 1) % M];
        if ((a <= 0.0) != (b <= 0.0)) {
            const double lo = (i + 0.5) / M;
            zeros.push_back(wrap01(refine_zero(f, df, lo, lo + 1.0 / M)));
        }
    }
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

}  // namespace

ZeroSet find_gamma_zeros(const EOPFamily& fam, int n, int grid_size) {
    if (n < 2 || n > fam.max_degree)
        throw InvalidDegree("gamma zero scan needs 2 <= n <= family max degree");
    const int want = expected_gamma_count(n);
    int M = std::max(grid_size, 4 * n);
    std::vector<double> zeros;
    while (true) {
        zeros = scan_gamma(fam, n, M);
        if (static_cast<int>(zeros.size()) == want) break;
        if (M >= 65536) {
            // Near-double-zero policy: retry once on a doubled quadrature family
            // before giving up.
            const QuadratureRule rule2 = build_rule(fam.lattice, 2 * fam.rule.order);
            const EOPFamily fam2 = gram_schmidt(fam.lattice, fam.weight, rule2, fam.max_degree);
            zeros = scan_gamma(fam2, n, M);
            if (static_cast<int>(zeros.size()) == want) break;
            throw CountMismatch("degree " + std::to_string(n) + ": found " +
                                std::to_string(zeros.size()) + " gamma zeros, expected " +
                                std::to_string(want) + " (grid " + std::to_string(M) + ")");
        }
        M *= 2;
    }
    ZeroSet zs;
    zs.degree = n;
    zs.grid_used = M;
    zs.gamma_zeros = zeros;
    for (double t : zeros) zs.gamma_residuals.push_back(std::abs(eval_gamma(fam, n, t)));
    if (n % 2 == 1) {
        zs.real_zeros.push_back(find_real_zero(fam, n));
        zs.real_residuals.push_back(std::abs(
            eval_poly(fam, n, std::complex<double>(zs.real_zeros.back(), 0.0)).real()));
    }
    return zs;
}

double find_real_zero(const EOPFamily& fam, int n) {
    if (n % 2 == 0) throw InvalidDegree("only odd-degree members have a real-interval zero");
    if (n < 3 || n > fam.max_degree) throw InvalidDegree("real zero scan needs 3 <= n <= N");
    // pi_n is real on (0,1) (rectangular lattice); the pole neighborhoods at the
    // lattice points 0 and 1 are excluded.
    const double lo = 1e-4, hi = 1.0 - 1e-4;
    auto f = [&](double t) { return eval_poly(fam, n, std::complex<double>(t, 0.0)).real(); };
    auto df = [&](double t) {
        const auto& c = fam.monic_coeffs[basis_position(n)];
        const double p = wp(fam.lattice, {t, 0.0}).real();
        const double pp = wp_prime(fam.lattice, {t, 0.0}).real();
        return eval_coeffs_d1_at(fam.lattice, c, p, pp) / std::sqrt(fam.norm(n));
    };
    const int M = 4096;
    std::vector<double> found;
    double prev_t = lo, prev_v = f(lo);
    for (int i = 1; i <= M; ++i) {
        const double t = lo + (hi - lo) * i / M;
        const double v = f(t);
        if ((prev_v <= 0.0) != (v <= 0.0)) found.push_back(refine_zero(f, df, prev_t, t));
        prev_t = t;
        prev_v = v;
    }
    if (found.empty()) throw ZeroNotFound("no real-interval zero bracketed for degree " +
                                          std::to_string(n));
    if (found.size() > 1)
        throw CountMismatch("degree " + std::to_string(n) + ": multiple real-interval zeros");
    return found.front();
}

double abel_sum_check(const ZeroSet& zs, const TorusLattice& L) {
    const int total = static_cast<int>(zs.gamma_zeros.size() + zs.real_zeros.size());
    if (total != zs.degree)
        throw IncompleteZeroSet("zero set has " + std::to_string(total) + " zeros for degree " +
                                std::to_string(zs.degree));
    std::complex<double> s = 0.0;
    for (double t : zs.gamma_zeros) s += std::complex<double>(t, 0.5 * L.tau_im);
    for (double t : zs.real_zeros) s += t;
    // Reduce modulo Z + tau Z.
    const double n = std::round(s.imag() / L.tau_im);
    s -= std::complex<double>(0.0, n * L.tau_im);
    s -= std::round(s.real());
    return std::abs(s);
}

std::vector<double> simplicity_margins(const EOPFamily& fam, const ZeroSet& zs) {
    double scale = 0.0;
    for (int i = 0; i < 512; ++i)
        scale = std::max(scale, std::abs(eval_gamma(fam, zs.degree, (i + 0.5) / 512)));
    std::vector<double> margins;
    for (double t : zs.gamma_zeros)
        margins.push_back(std::abs(eval_gamma_d1(fam, zs.degree, t)) / scale);
    return margins;
}

}  // namespace eopk
