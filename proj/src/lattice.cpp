#include "eopk/lattice.hpp"

#include <cmath>
#include <string>

#include "eopk/errors.hpp"

namespace eopk {

namespace {

using cplx = std::complex<double>;

constexpr double kPoleGuard = 1e-12;

// e^{w} - 1 without cancellation for small w.
cplx cexpm1(cplx w) {
    const double a = w.real(), b = w.imag();
    const double sh = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * sh * sh, std::exp(a) * std::sin(b)};
}

struct Reduced {
    cplx z;        // fundamental representative, Im(z) in [0, tau_im/2]
    double m, n;   // original z = z_red_pre_flip + m + n*tau
    bool flipped;  // true if z was negated (odd functions change sign)
};

Reduced reduce(const TorusLattice& L, cplx z) {
    Reduced r;
    r.n = std::floor(z.imag() / L.tau_im + 0.5);
    r.m = std::floor(z.real() + 0.5);
    cplx w(z.real() - r.m, z.imag() - r.n * L.tau_im);
    r.flipped = w.imag() < 0.0 || (w.imag() == 0.0 && w.real() < 0.0);
    r.z = r.flipped ? -w : w;
    return r;
}

double distance_after_reduce(const TorusLattice& L, cplx w) {
    // Nearest lattice point to a reduced w with |Re| <= 1/2, 0 <= Im <= tau_im/2.
    double d = std::abs(w);
    for (int m = -1; m <= 1; ++m) {
        d = std::min(d, std::abs(w - cplx(m, 0.0)));
        d = std::min(d, std::abs(w - cplx(m, L.tau_im)));
    }
    return d;
}

void guard_pole(const TorusLattice& L, cplx w) {
    if (distance_after_reduce(L, w) < kPoleGuard)
        throw PoleProximity("evaluation point within 1e-12 of a lattice point");
}

// Series core shared by wp / wp'. D = 1 - u computed stably.
struct UData {
    cplx u, D;
};

UData u_of(cplx z) {
    const cplx two_pi_i(0.0, 2.0 * M_PI);
    cplx em1 = cexpm1(two_pi_i * z);
    return {1.0 + em1, -em1};
}

}  // namespace

TorusLattice build_lattice(double tau_im, int series_terms) {
    if (!(tau_im > 0.0)) throw NonPositiveTau("tau_im must be positive");
    if (series_terms < 8) throw std::invalid_argument("series_terms must be at least 8");

    TorusLattice L;
    L.tau_im = tau_im;
    L.series_terms = series_terms;
    L.qq = std::exp(-2.0 * M_PI * tau_im);

    // Lambert-series Eisenstein sums: sum n^k qq^n/(1-qq^n). Compensated
    // accumulation: E6 vanishes at the square lattice, so g3 rides on the
    // cancellation of 1 - 504*s5 and every digit of s5 counts.
    double s1 = 0.0, s3 = 0.0, s5 = 0.0;
    double c1 = 0.0, c3 = 0.0, c5 = 0.0;
    auto add = [](double& s, double& c, double v) {
        double t = s + v;
        c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
        s = t;
    };
    for (int n = 1; n <= series_terms; ++n) {
        const double qn = std::exp(-2.0 * M_PI * tau_im * n);
        const double f = qn / (1.0 - qn);
        const double n2 = static_cast<double>(n) * n;
        add(s1, c1, n * f);
        add(s3, c3, n * n2 * f);
        add(s5, c5, n * n2 * n2 * f);
        if (qn * n2 * n2 * n < 1e-20 * (1.0 + s5)) break;
    }
    s1 += c1;
    s3 += c3;
    s5 += c5;
    const double pi2 = M_PI * M_PI;
    const double e4 = 1.0 + 240.0 * s3;
    const double e6 = 1.0 - 504.0 * s5;
    L.g2 = 4.0 * pi2 * pi2 / 3.0 * e4;
    L.g3 = 8.0 * pi2 * pi2 * pi2 / 27.0 * e6;
    L.eta1 = pi2 / 6.0 * (1.0 - 24.0 * s1);

    L.e1 = wp(L, cplx(0.5, 0.0)).real();
    L.e2 = wp(L, cplx(0.5, 0.5 * tau_im)).real();
    L.e3 = wp(L, cplx(0.0, 0.5 * tau_im)).real();

    const double scale = std::abs(L.e1) + std::abs(L.e2) + std::abs(L.e3);
    const double r_sum = std::abs(L.e1 + L.e2 + L.e3);
    const double r_g2 = std::abs(L.g2 + 4.0 * (L.e1 * L.e2 + L.e2 * L.e3 + L.e3 * L.e1));
    const double r_g3 = std::abs(L.g3 - 4.0 * L.e1 * L.e2 * L.e3);
    if (r_sum > 1e-10 * std::max(1.0, scale) || r_g2 > 1e-10 * std::max(1.0, std::abs(L.g2)) ||
        r_g3 > 1e-10 * std::max(1.0, std::abs(L.g2)))
        throw TruncationTooCoarse("lattice invariant residual exceeds 1e-10; raise series_terms");
    return L;
}

std::complex<double> wp(const TorusLattice& L, std::complex<double> z) {
    const Reduced r = reduce(L, z);
    guard_pole(L, r.z);
    const auto [u, D] = u_of(r.z);

    cplx s = u / (D * D);
    double qn = 1.0;
    for (int n = 1; n <= L.series_terms; ++n) {
        qn *= L.qq;
        const cplx a = qn * u, b = qn / u;
        const cplx one_a = 1.0 - a, one_b = 1.0 - b;
        const double one_q = 1.0 - qn;
        const cplx term = a / (one_a * one_a) + b / (one_b * one_b) - 2.0 * qn / (one_q * one_q);
        s += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(s))) break;
    }
    return -4.0 * M_PI * M_PI * (1.0 / 12.0 + s);
}

std::complex<double> wp_prime(const TorusLattice& L, std::complex<double> z) {
    const Reduced r = reduce(L, z);
    guard_pole(L, r.z);
    const auto [u, D] = u_of(r.z);

    cplx s = u * (1.0 + u) / (D * D * D);
    double qn = 1.0;
    for (int n = 1; n <= L.series_terms; ++n) {
        qn *= L.qq;
        const cplx a = qn * u, b = qn / u;
        const cplx one_a = 1.0 - a, one_b = 1.0 - b;
        const cplx term =
            a * (1.0 + a) / (one_a * one_a * one_a) - b * (1.0 + b) / (one_b * one_b * one_b);
        s += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(s))) break;
    }
    const cplx v = cplx(0.0, -8.0 * M_PI * M_PI * M_PI) * s;
    return r.flipped ? -v : v;
}

std::complex<double> wp_second(const TorusLattice& L, std::complex<double> z) {
    // From the curve equation: wp'' = 6 wp^2 - g2/2.
    const cplx p = wp(L, z);
    return 6.0 * p * p - 0.5 * L.g2;
}

std::complex<double> zeta_w(const TorusLattice& L, std::complex<double> z) {
    const Reduced r = reduce(L, z);
    guard_pole(L, r.z);
    const auto [u, D] = u_of(r.z);

    // pi*cot(pi*z) = -i*pi*(1+u)/(1-u)
    cplx s = cplx(0.0, -M_PI) * (2.0 - D) / D;
    s += 2.0 * L.eta1 * r.z;
    cplx tail = 0.0;
    double qn = 1.0;
    for (int n = 1; n <= L.series_terms; ++n) {
        qn *= L.qq;
        const cplx term = 1.0 / (1.0 - qn * u) - 1.0 / (1.0 - qn / u);
        tail += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(tail))) break;
    }
    s -= cplx(0.0, 2.0 * M_PI) * tail;
    if (r.flipped) s = -s;
    // Quasi-periodic restoration: zeta(w + m + n*tau) = zeta(w) + 2m*eta1 + 2n*eta2.
    return s + 2.0 * r.m * L.eta1 + 2.0 * r.n * L.eta2();
}

double wp_gamma(const TorusLattice& L, double t) {
    return wp(L, {t, 0.5 * L.tau_im}).real();
}

double wp_prime_gamma(const TorusLattice& L, double t) {
    return wp_prime(L, {t, 0.5 * L.tau_im}).real();
}

double wp_second_gamma(const TorusLattice& L, double t) {
    const double p = wp_gamma(L, t);
    return 6.0 * p * p - 0.5 * L.g2;
}

double lattice_distance(const TorusLattice& L, std::complex<double> z) {
    return distance_after_reduce(L, reduce(L, z).z);
}

}  // namespace eopk
