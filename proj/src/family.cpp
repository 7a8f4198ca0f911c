#include "eopk/family.hpp"

#include <cmath>
#include <string>

#include "eopk/errors.hpp"
#include "eopk/numerics.hpp"

namespace eopk {

int basis_position(int degree) {
    if (degree < 0 || degree == 1) return -1;
    return degree == 0 ? 0 : degree - 1;
}

int basis_degree_at(int position) { return position == 0 ? 0 : position + 1; }

std::complex<double> basis_eval(const TorusLattice& L, int n, std::complex<double> z) {
    if (n < 0 || n == 1) throw InvalidDegree("basis index " + std::to_string(n));
    if (n == 0) return 1.0;
    const auto p = wp(L, z);
    if (n % 2 == 0) return std::pow(p, n / 2);
    return -0.5 * wp_prime(L, z) * std::pow(p, (n - 3) / 2);
}

double laurent_head(const EllipticPolynomial& p) {
    if (p.coeffs.empty()) return 0.0;
    const int pos = basis_position(p.degree);
    return pos >= 0 && pos < static_cast<int>(p.coeffs.size()) ? p.coeffs[pos] : 0.0;
}

namespace {

// Powers of x up to x^kmax.
template <typename T>
void fill_powers(T x, int kmax, std::vector<T>& pw) {
    pw.assign(kmax + 1, T(1));
    for (int k = 1; k <= kmax; ++k) pw[k] = pw[k - 1] * x;
}

int max_wp_power(int dim) {
    // Highest p-power across members of a dim-sized family.
    const int top = basis_degree_at(dim - 1);
    return top / 2;
}

// Real basis values at a gamma point from wp, wp' there.
void basis_values(int dim, double p, double pp, std::vector<double>& out) {
    std::vector<double> pw;
    fill_powers(p, max_wp_power(dim), pw);
    out.assign(dim, 0.0);
    out[0] = 1.0;
    for (int pos = 1; pos < dim; ++pos) {
        const int deg = basis_degree_at(pos);
        out[pos] = deg % 2 == 0 ? pw[deg / 2] : -0.5 * pp * pw[(deg - 3) / 2];
    }
}

}  // namespace

double EOPFamily::norm(int n) const {
    const int pos = basis_position(n);
    if (pos < 0 || pos >= dim()) throw InvalidDegree("no member of degree " + std::to_string(n));
    return h[pos];
}

std::vector<double> EOPFamily::ortho_coeffs(int n) const {
    if (n == 1) return std::vector<double>(dim(), 0.0);
    const int pos = basis_position(n);
    if (pos < 0 || pos >= dim()) throw InvalidDegree("no member of degree " + std::to_string(n));
    std::vector<double> c = monic_coeffs[pos];
    const double s = 1.0 / std::sqrt(h[pos]);
    for (double& v : c) v *= s;
    return c;
}

EllipticPolynomial EOPFamily::monic(int n) const {
    if (n == 1) return EllipticPolynomial{1, std::vector<double>(dim(), 0.0), 0.0, true};
    const int pos = basis_position(n);
    if (pos < 0 || pos >= dim()) throw InvalidDegree("no member of degree " + std::to_string(n));
    return EllipticPolynomial{n, monic_coeffs[pos], h[pos], true};
}

EllipticPolynomial EOPFamily::orthonormal(int n) const {
    if (n == 1) return EllipticPolynomial{1, std::vector<double>(dim(), 0.0), 0.0, false};
    return EllipticPolynomial{n, ortho_coeffs(n), norm(n), false};
}

EOPFamily gram_schmidt(const TorusLattice& L, const WeightSpec& w, const QuadratureRule& rule,
                       int N) {
    if (N < 0) throw std::invalid_argument("gram_schmidt: N must be nonnegative");
    EOPFamily fam;
    fam.lattice = L;
    fam.weight = w;
    fam.rule = rule;
    fam.max_degree = N;
    fam.weight_vals = weight_nodes(w, L, rule);

    const int dim = N == 0 ? 1 : N;  // |{0, 2, 3, ..., N}|
    const std::size_t M = rule.t.size();

    std::vector<std::vector<double>> basis(dim, std::vector<double>(M));
    std::vector<double> bv;
    for (std::size_t j = 0; j < M; ++j) {
        basis_values(dim, rule.wp_t[j], rule.wpp_t[j], bv);
        for (int pos = 0; pos < dim; ++pos) basis[pos][j] = bv[pos];
    }

    std::vector<double> ww(M);
    for (std::size_t j = 0; j < M; ++j) ww[j] = rule.w[j] * fam.weight_vals[j];

    fam.monic_coeffs.assign(dim, std::vector<double>(dim, 0.0));
    fam.h.assign(dim, 0.0);
    fam.ortho_nodes.assign(dim, std::vector<double>(M, 0.0));

    for (int pos = 0; pos < dim; ++pos) {
        std::vector<double> r = basis[pos];
        std::vector<double> coef(dim, 0.0);
        coef[pos] = 1.0;
        // MGS against previous orthonormal members, applied twice.
        for (int pass = 0; pass < 2; ++pass) {
            for (int m = 0; m < pos; ++m) {
                const double c = weighted_sum(ww, r, fam.ortho_nodes[m]);
                const double sm = 1.0 / std::sqrt(fam.h[m]);
                for (std::size_t j = 0; j < M; ++j) r[j] -= c * fam.ortho_nodes[m][j];
                for (int k = 0; k <= m; ++k) coef[k] -= c * sm * fam.monic_coeffs[m][k];
            }
        }
        const double hn = weighted_sum(ww, r, r);
        if (pos == 0 && !(hn > 0.0)) throw DegenerateNorm("weight integrates to zero");
        if (pos > 0 && !(hn > 1e-13 * fam.h[0]))
            throw DegenerateNorm("monic norm collapsed at degree " +
                                 std::to_string(basis_degree_at(pos)));
        fam.h[pos] = hn;
        fam.monic_coeffs[pos] = coef;
        const double s = 1.0 / std::sqrt(hn);
        for (std::size_t j = 0; j < M; ++j) fam.ortho_nodes[pos][j] = r[j] * s;
    }
    return fam;
}

namespace {

const std::vector<double>* coeffs_or_null(const EOPFamily& fam, int n) {
    if (n < 0 || n == 1) return nullptr;
    const int pos = basis_position(n);
    if (pos >= fam.dim())
        throw InvalidDegree("degree " + std::to_string(n) + " exceeds family max");
    return &fam.monic_coeffs[pos];
}

}  // namespace

std::complex<double> eval_coeffs_complex(const TorusLattice& L, const std::vector<double>& coeffs,
                                         std::complex<double> z) {
    const int dim = static_cast<int>(coeffs.size());
    const auto p = wp(L, z);
    const auto pp = wp_prime(L, z);
    std::vector<std::complex<double>> pw;
    fill_powers(p, max_wp_power(dim), pw);
    std::complex<double> even = coeffs[0], odd = 0.0;
    for (int pos = 1; pos < dim; ++pos) {
        const int deg = basis_degree_at(pos);
        if (deg % 2 == 0)
            even += coeffs[pos] * pw[deg / 2];
        else
            odd += coeffs[pos] * pw[(deg - 3) / 2];
    }
    return even - 0.5 * pp * odd;
}

std::complex<double> eval_monic(const EOPFamily& fam, int n, std::complex<double> z) {
    const auto* c = coeffs_or_null(fam, n);
    if (!c) return 0.0;
    return eval_coeffs_complex(fam.lattice, *c, z);
}

std::complex<double> eval_poly(const EOPFamily& fam, int n, std::complex<double> z) {
    if (n < 0 || n == 1) return 0.0;
    return eval_monic(fam, n, z) / std::sqrt(fam.norm(n));
}

double eval_coeffs_at(const std::vector<double>& coeffs, double p, double pp) {
    const int dim = static_cast<int>(coeffs.size());
    std::vector<double> pw;
    fill_powers(p, max_wp_power(dim), pw);
    double even = coeffs[0], odd = 0.0;
    for (int pos = 1; pos < dim; ++pos) {
        const int deg = basis_degree_at(pos);
        if (deg % 2 == 0)
            even += coeffs[pos] * pw[deg / 2];
        else
            odd += coeffs[pos] * pw[(deg - 3) / 2];
    }
    return even - 0.5 * pp * odd;
}

double eval_coeffs_d1_at(const TorusLattice& L, const std::vector<double>& coeffs, double p,
                         double pp) {
    // E_{2k}' = k p^{k-1} pp ; E_{2k+3}' = -1/2 (wp'' p^k + k pp^2 p^{k-1})
    // with wp'' = 6p^2 - g2/2 and pp^2 reduced by the curve equation.
    const double pps = 6.0 * p * p - 0.5 * L.g2;
    const double pp2 = 4.0 * p * p * p - L.g2 * p - L.g3;
    const int dim = static_cast<int>(coeffs.size());
    std::vector<double> pw;
    fill_powers(p, max_wp_power(dim), pw);
    double acc = 0.0;
    for (int pos = 1; pos < dim; ++pos) {
        const int deg = basis_degree_at(pos);
        if (deg % 2 == 0) {
            const int k = deg / 2;
            acc += coeffs[pos] * k * pw[k - 1] * pp;
        } else {
            const int k = (deg - 3) / 2;
            acc -= 0.5 * coeffs[pos] * (pps * pw[k] + (k > 0 ? k * pp2 * pw[k - 1] : 0.0));
        }
    }
    return acc;
}

double eval_coeffs_d2_at(const TorusLattice& L, const std::vector<double>& coeffs, double p,
                         double pp) {
    // E_{2k}'' = k(k-1) p^{k-2} pp^2 + k p^{k-1} wp''
    // E_{2k+3}'' = -1/2 (wp''' p^k + 3k pp wp'' p^{k-1} + k(k-1) pp^3 p^{k-2}),
    // wp''' = 12 p pp.
    const double pps = 6.0 * p * p - 0.5 * L.g2;
    const double pp2 = 4.0 * p * p * p - L.g2 * p - L.g3;
    const double ppt = 12.0 * p * pp;
    const int dim = static_cast<int>(coeffs.size());
    std::vector<double> pw;
    fill_powers(p, max_wp_power(dim), pw);
    double acc = 0.0;
    for (int pos = 1; pos < dim; ++pos) {
        const int deg = basis_degree_at(pos);
        if (deg % 2 == 0) {
            const int k = deg / 2;
            double term = k * pw[k - 1] * pps;
            if (k > 1) term += k * (k - 1) * pw[k - 2] * pp2;
            acc += coeffs[pos] * term;
        } else {
            const int k = (deg - 3) / 2;
            double term = ppt * pw[k];
            if (k > 0) term += 3.0 * k * pp * pps * pw[k - 1];
            if (k > 1) term += k * (k - 1) * pp2 * pp * pw[k - 2];
            acc -= 0.5 * coeffs[pos] * term;
        }
    }
    return acc;
}

double eval_gamma(const EOPFamily& fam, int n, double t) {
    if (n < 0 || n == 1) return 0.0;
    return eval_gamma_monic(fam, n, t) / std::sqrt(fam.norm(n));
}

double eval_gamma_monic(const EOPFamily& fam, int n, double t) {
    const auto* c = coeffs_or_null(fam, n);
    if (!c) return 0.0;
    return eval_coeffs_at(*c, wp_gamma(fam.lattice, t), wp_prime_gamma(fam.lattice, t));
}

double eval_gamma_d1(const EOPFamily& fam, int n, double t) {
    const auto* c = coeffs_or_null(fam, n);
    if (!c) return 0.0;
    return eval_coeffs_d1_at(fam.lattice, *c, wp_gamma(fam.lattice, t),
                             wp_prime_gamma(fam.lattice, t)) /
           std::sqrt(fam.norm(n));
}

double eval_gamma_d2(const EOPFamily& fam, int n, double t) {
    const auto* c = coeffs_or_null(fam, n);
    if (!c) return 0.0;
    return eval_coeffs_d2_at(fam.lattice, *c, wp_gamma(fam.lattice, t),
                             wp_prime_gamma(fam.lattice, t)) /
           std::sqrt(fam.norm(n));
}

std::vector<std::vector<double>> gram_matrix(const EOPFamily& fam) {
    const int dim = fam.dim();
    std::vector<std::vector<double>> g(dim, std::vector<double>(dim));
    const std::size_t M = fam.rule.t.size();
    std::vector<double> ww(M);
    for (std::size_t j = 0; j < M; ++j) ww[j] = fam.rule.w[j] * fam.weight_vals[j];
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b <= a; ++b)
            g[a][b] = g[b][a] = weighted_sum(ww, fam.ortho_nodes[a], fam.ortho_nodes[b]);
    return g;
}

}  // namespace eopk
