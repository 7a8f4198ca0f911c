// Test-side oracles, independent of the library's evaluation paths.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Direct Eisenstein lattice sums sum' omega^{-k} over |omega| <= R for the
// rectangular lattice Z + i*tau_im*Z, with one Richardson step in R to trim
// the tail. Independent of every q-series in the library.
inline double eisenstein_sum(double tau_im, int k, double R) {
    const int mmax = static_cast<int>(R) + 1;
    const int nmax = static_cast<int>(R / tau_im) + 1;
    double total = 0.0;
    for (int m = -mmax; m <= mmax; ++m)
        for (int n = -nmax; n <= nmax; ++n) {
            if (m == 0 && n == 0) continue;
            const std::complex<double> w(m, n * tau_im);
            if (std::abs(w) > R) continue;
            total += (1.0 / std::pow(w, k)).real();
        }
    return total;
}

inline double g2_bruteforce(double tau_im) {
    const double a = 60.0 * eisenstein_sum(tau_im, 4, 150.0);
    const double b = 60.0 * eisenstein_sum(tau_im, 4, 300.0);
    return (4.0 * b - a) / 3.0;  // Richardson in 1/R^2
}

inline double g3_bruteforce(double tau_im) {
    const double a = 140.0 * eisenstein_sum(tau_im, 6, 100.0);
    const double b = 140.0 * eisenstein_sum(tau_im, 6, 200.0);
    return (4.0 * b - a) / 3.0;
}

// Central finite differences.
inline std::complex<double> cdiff(const std::function<std::complex<double>(std::complex<double>)>& f,
                                  std::complex<double> z, double h = 1e-5) {
    return (f(z + h) - f(z - h)) / (2.0 * h);
}

// Frozen reference values computed with mpmath (45 digits) via the row-summed
// cosecant series for wp/wp' and theta constants for the invariants; tau = i.
namespace frozen_tau_i {
constexpr double e1 = 6.875185818020372827490095779810557198;
constexpr double g2 = 189.0727201292338522930613965349213134;
constexpr double eta1 = 1.570796326794896619231321691639751442;  // pi/2
constexpr double wp_gamma_03_re = -1.862414296920333350412043055800153540;
constexpr double wpp_gamma_03_re = 18.06355316517289716209795442706199331;
constexpr double wp_z1_re = -2.281228546464380899041808211332595002;
constexpr double wp_z1_im = -5.137284525485511042236386138859936205;
constexpr double wpp_z1_re = 36.96741981535957096053881749424787350;
constexpr double wpp_z1_im = 16.13357821583395272318212031754899358;
// Unity-weight moment closed forms: nu1 = -pi, nu2 = g2/12, nu3 = -3 g2 pi/20.
constexpr double nu1 = -3.141592653589793238462643383279502884;
constexpr double nu2 = 15.75606001076948769108844971124344278;
constexpr double nu3 = -89.09842028283601391890961120424212690;
}  // namespace frozen_tau_i

inline std::mt19937 rng(unsigned seed = 987654321u) { return std::mt19937(seed); }

inline double rand_t(std::mt19937& g, double lo = 0.02, double hi = 0.98) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace oracle
