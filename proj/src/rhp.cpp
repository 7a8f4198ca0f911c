#include "eopk/rhp.hpp"

#include <cmath>
#include <string>

#include "eopk/errors.hpp"
#include "eopk/numerics.hpp"

namespace eopk {

namespace {

using cplx = std::complex<double>;

constexpr double kContourGuard = 1e-6;
constexpr cplx kTwoPiI{0.0, 2.0 * M_PI};

double dist_to_gamma(const TorusLattice& L, cplx z) {
    // gamma and its lattice translates sit at Im = tau_im/2 + k*tau_im.
    const double y = z.imag() - 0.5 * L.tau_im;
    return std::abs(y - L.tau_im * std::floor(y / L.tau_im + 0.5));
}

}  // namespace

CauchyTransform::CauchyTransform(const EOPFamily& fam, const EllipticPolynomial& p)
    : fam_(&fam), coeffs_(p.coeffs) {
    coeffs_.resize(fam.dim(), 0.0);
    const TorusLattice& L = fam.lattice;
    for (int order = fam.rule.order; order <= std::max(fam.rule.order, 1024); order *= 2) {
        Grid g;
        g.order = order;
        std::vector<double> x, wt;
        gauss_legendre(order, x, wt);
        g.t.resize(order);
        g.wq.resize(order);
        g.g.resize(order);
        g.zeta0.resize(order);
        for (int j = 0; j < order; ++j) {
            g.t[j] = 0.5 * (x[j] + 1.0);
            g.wq[j] = 0.5 * wt[j];
            const double pv = wp_gamma(L, g.t[j]);
            const double ppv = wp_prime_gamma(L, g.t[j]);
            g.g[j] = eval_coeffs_at(coeffs_, pv, ppv) * eval_weight_t(fam.weight, L, g.t[j]);
            g.zeta0[j] = zeta_w(L, cplx(g.t[j], 0.5 * L.tau_im));
        }
        grids_.push_back(std::move(g));
        if (order >= 1024) break;
    }

    {
        const Grid& g = grids_.front();
        std::vector<double> prod(g.t.size());
        for (std::size_t j = 0; j < g.t.size(); ++j) prod[j] = g.wq[j] * g.g[j];
        mu_ = accumulate(prod);
    }

    // Branch constants of I0(z) = int (zeta(w-z)-zeta(w)) dw/(2 pi i) = i eta1 z/pi + k,
    // calibrated on each side of gamma at a comfortably resolved distance.
    auto calibrate = [&](double im_frac) {
        const Grid& g = grids_.back();
        const cplx z(0.37, im_frac * L.tau_im);
        cplx s = 0.0;
        for (std::size_t j = 0; j < g.t.size(); ++j)
            s += g.wq[j] * (zeta_w(L, cplx(g.t[j], 0.5 * L.tau_im) - z) - g.zeta0[j]);
        s /= kTwoPiI;
        const cplx base = cplx(0.0, 1.0) * L.eta1 * z / M_PI;
        return std::round((s - base).real());
    };
    k_below_ = calibrate(0.25);
    k_above_ = calibrate(0.75);
}

CauchyTransform::CauchyTransform(const EOPFamily& fam, int degree)
    : CauchyTransform(fam, fam.monic(degree)) {}

const CauchyTransform::Grid& CauchyTransform::grid_for(double dist) const {
    for (const Grid& g : grids_)
        if (dist >= 10.0 / g.order) return g;
    return grids_.back();
}

std::complex<double> CauchyTransform::eval_reduced(cplx z) const {
    const TorusLattice& L = fam_->lattice;
    const double dist = dist_to_gamma(L, z);
    const Grid& g = grid_for(dist);

    if (dist > 0.2 * L.tau_im) {
        // Pole well separated from the contour: plain spectral quadrature.
        cplx s = 0.0;
        for (std::size_t j = 0; j < g.t.size(); ++j)
            s += g.wq[j] * g.g[j] * (zeta_w(L, cplx(g.t[j], 0.5 * L.tau_im) - z) - g.zeta0[j]);
        return s / kTwoPiI;
    }

    // Near gamma, subtract the analytic continuation G(z) = p(z) w(z): the
    // integrand's pole at w = z becomes removable, so the quadrature error is
    // uniform in the distance. The bare-kernel moment is exact:
    // I0(z) = i eta1 z / pi + side constant.
    const cplx gz = eval_coeffs_complex(L, coeffs_, z) * weight_analytic(fam_->weight, L, z);
    cplx s = 0.0;
    for (std::size_t j = 0; j < g.t.size(); ++j) {
        const cplx ker = zeta_w(L, cplx(g.t[j], 0.5 * L.tau_im) - z) - g.zeta0[j];
        s += g.wq[j] * (g.g[j] - gz) * ker;
    }
    s /= kTwoPiI;
    const double side = z.imag() > 0.5 * L.tau_im ? k_above_ : k_below_;
    const cplx i0 = cplx(0.0, 1.0) * L.eta1 * z / M_PI + side;
    return s + gz * i0;
}

std::complex<double> CauchyTransform::operator()(cplx z) const {
    const TorusLattice& L = fam_->lattice;
    if (dist_to_gamma(L, z) <= kContourGuard)
        throw TooCloseToContour("Cauchy transform within 1e-6 of gamma");
    // Reduce to the strip Re in [0,1), Im in [0, tau_im); the transform of a
    // polynomial orthogonal to 1 is fully periodic, otherwise the zeta
    // quasi-periods enter through mu.
    const double m = std::floor(z.real());
    const double n = std::floor(z.imag() / L.tau_im);
    const cplx zr = z - cplx(m, n * L.tau_im);
    cplx v = eval_reduced(zr);
    if (mu_ != 0.0) {
        const cplx shift = 2.0 * m * L.eta1 + 2.0 * n * L.eta2();
        v -= shift * mu_ / kTwoPiI;
    }
    return v;
}

std::complex<double> cauchy_transform(const EOPFamily& fam, const EllipticPolynomial& p,
                                      std::complex<double> z) {
    return CauchyTransform(fam, p)(z);
}

Mat2c RHSolution::eval(cplx z) const {
    const EOPFamily& fam = *family;
    const int n = degree;
    const cplx pn = eval_monic(fam, n, z);
    const cplx pn1 = eval_monic(fam, n - 1, z);
    const cplx fac = kTwoPiI / fam.norm(n - 1);
    return {{{pn, cauchy_n(z)}, {fac * pn1, fac * cauchy_n1(z)}}};
}

RHSolution assemble_Y(const EOPFamily& fam, int n) {
    if (n < 3 || n > fam.max_degree)
        throw InvalidDegree("Y_n needs 3 <= n <= family max degree");
    return RHSolution{&fam, n, CauchyTransform(fam, n), CauchyTransform(fam, n - 1)};
}

std::complex<double> det_Y(const RHSolution& Y, std::complex<double> z) {
    const Mat2c m = Y.eval(z);
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

std::complex<double> det_Y(const EOPFamily& fam, int n, std::complex<double> z) {
    return det_Y(assemble_Y(fam, n), z);
}

namespace {

Mat2c adjugate(const Mat2c& m) {
    return {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
}

cplx sandwich21(const Mat2c& a, const Mat2c& b) {
    // (0 1) adj(a) b (1 0)^T
    const Mat2c adj = adjugate(a);
    return adj[1][0] * b[0][0] + adj[1][1] * b[1][0];
}

double rhs_at_eps(const RHSolution& Yn2, const RHSolution& Yn1, const RHSolution& Yn,
                  const FiveTermCoefficients& c5, double x, double y, double eps) {
    const EOPFamily& fam = *Yn.family;
    const TorusLattice& L = fam.lattice;
    const int n = Yn.degree;
    const cplx zx(x, 0.5 * L.tau_im + eps);
    const cplx zy(y, 0.5 * L.tau_im + eps);
    const Mat2c Ynx = Yn.eval(zx), Yny = Yn.eval(zy);
    const Mat2c Yn1x = Yn1.eval(zx), Yn1y = Yn1.eval(zy);
    const Mat2c Yn2x = Yn2.eval(zx), Yn2y = Yn2.eval(zy);

    const cplx s1 = sandwich21(Yn1y, Ynx) - sandwich21(Yn1x, Yny);
    const cplx s2 = sandwich21(Yn2y, Yn1x) - sandwich21(Yn2x, Yn1y);
    const cplx s3 = sandwich21(Yn1y, Yn1x);
    const double beta = c5.at_b(n - 1) * std::sqrt(fam.norm(n - 2) / fam.norm(n - 1));

    const cplx denom = kTwoPiI * (wp(L, zx) - wp(L, zy));
    return (-(s1 + s2 + beta * s3) / denom).real();
}

}  // namespace

double cd_rhp_identity(const RHSolution& Yn2, const RHSolution& Yn1, const RHSolution& Yn,
                       const FiveTermCoefficients& c5, double x, double y, double eps) {
    const EOPFamily& fam = *Yn.family;
    const int n = Yn.degree;
    if (Yn1.degree != n - 1 || Yn2.degree != n - 2)
        throw InvalidDegree("cd_rhp_identity needs Y_{n-2}, Y_{n-1}, Y_n");
    // The sandwiched (2,1) entry is real-analytic along gamma, so the offset
    // error is an even series in eps; one Richardson step at exponent 2 removes
    // the leading term.
    const double r1 = rhs_at_eps(Yn2, Yn1, Yn, c5, x, y, eps);
    const double r2 = rhs_at_eps(Yn2, Yn1, Yn, c5, x, y, 0.5 * eps);
    const double rhs = (4.0 * r2 - r1) / 3.0;

    double lhs = 0.0;
    for (int j = 0; j <= n - 2; ++j) {
        if (j == 1) continue;
        lhs += eval_gamma(fam, j, x) * eval_gamma(fam, j, y);
    }
    return std::abs(lhs - rhs);
}

double cd_rhp_identity(const EOPFamily& fam, const FiveTermCoefficients& c5, int n, double x,
                       double y, double eps) {
    if (n < 5) throw InvalidDegree("cd_rhp_identity needs n >= 5");
    const RHSolution Yn2 = assemble_Y(fam, n - 2);
    const RHSolution Yn1 = assemble_Y(fam, n - 1);
    const RHSolution Yn = assemble_Y(fam, n);
    return cd_rhp_identity(Yn2, Yn1, Yn, c5, x, y, eps);
}

}  // namespace eopk
