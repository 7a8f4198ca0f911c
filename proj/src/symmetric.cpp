#include "eopk/symmetric.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "eopk/errors.hpp"

namespace eopk {

namespace {

void require_symmetric(const EOPFamily& fam, const char* who) {
    if (!fam.weight.symmetric())
        throw NotSymmetric(std::string(who) + " requires a symmetric weight");
}

}  // namespace

SplitFamily split_family(const EOPFamily& fam) {
    require_symmetric(fam, "split_family");
    SplitFamily out;
    for (int pos = 0; pos < fam.dim(); ++pos) {
        const int deg = basis_degree_at(pos);
        const auto coef = fam.ortho_coeffs(deg);
        double leak = 0.0;
        for (int k = 0; k < fam.dim(); ++k) {
            const int kd = basis_degree_at(k);
            if (kd % 2 != deg % 2) leak = std::max(leak, std::abs(coef[k]));
        }
        if (deg % 2 == 0) {
            out.even_degrees.push_back(deg);
            out.max_even_leak = std::max(out.max_even_leak, leak);
        } else {
            out.odd_degrees.push_back(deg);
            out.max_odd_leak = std::max(out.max_odd_leak, leak);
        }
    }
    return out;
}

double three_term_check(const EOPFamily& fam, const FiveTermCoefficients& c5, int n, double t) {
    require_symmetric(fam, "three_term_check");
    if (n < 0 || n == 1 || n + 2 > fam.max_degree)
        throw InvalidDegree("three-term residual needs member degrees n, n+2");
    const double lhs = wp_gamma(fam.lattice, t) * eval_gamma(fam, n, t);
    const double rhs = c5.at_a(n + 1) * eval_gamma(fam, n + 2, t) +
                       c5.at_c(n) * eval_gamma(fam, n, t) +
                       c5.at_a(n - 1) * eval_gamma(fam, n - 2, t);
    return std::abs(lhs - rhs);
}

double four_term_check(const EOPFamily& fam, const SevenTermCoefficients& c7, int n, double t) {
    require_symmetric(fam, "four_term_check");
    if (n < 0 || n == 1 || n + 3 > fam.max_degree)
        throw InvalidDegree("four-term residual needs member degrees n, n+3");
    const double lhs = wp_prime_gamma(fam.lattice, t) * eval_gamma(fam, n, t);
    const double rhs = c7.at_p(n + 3) * eval_gamma(fam, n + 3, t) +
                       c7.at_r(n + 1) * eval_gamma(fam, n + 1, t) +
                       c7.at_r(n) * eval_gamma(fam, n - 1, t) +
                       c7.at_p(n) * eval_gamma(fam, n - 3, t);
    return std::abs(lhs - rhs);
}

JacobiMatrix build_jacobi(const FiveTermCoefficients& c5, int n) {
    if (n < 1) throw InvalidDegree("Jacobi matrix needs n >= 1");
    JacobiMatrix J;
    J.size = n;
    for (int k = 0; k < n; ++k) {
        if (!c5.c.count(2 * k))
            throw InsufficientDegree("Jacobi diagonal needs c_" + std::to_string(2 * k));
        J.beta.push_back(c5.at_c(2 * k));
    }
    for (int k = 1; k < n; ++k) {
        if (!c5.a.count(2 * k - 1))
            throw InsufficientDegree("Jacobi off-diagonal needs a_" + std::to_string(2 * k - 1));
        J.alpha.push_back(c5.at_a(2 * k - 1));
    }
    return J;
}

TridiagonalSpectrum jacobi_spectrum(const JacobiMatrix& J) {
    return tridiagonal_eigs(J.beta, J.alpha);
}

InterlacingResult interlacing_check(const TridiagonalSpectrum& larger,
                                    const TridiagonalSpectrum& smaller) {
    InterlacingResult res;
    res.min_margin = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(larger.values.size());
    if (static_cast<int>(smaller.values.size()) != n - 1) return res;
    res.strict = true;
    for (int k = 0; k < n - 1; ++k) {
        const double lo = smaller.values[k] - larger.values[k];
        const double hi = larger.values[k + 1] - smaller.values[k];
        res.min_margin = std::min({res.min_margin, lo, hi});
        if (!(lo > 0.0) || !(hi > 0.0)) res.strict = false;
    }
    return res;
}

double wp_invert_gamma(const TorusLattice& L, double value) {
    const double lo_v = L.e3, hi_v = L.e2;
    const double pad = 1e-9 * (1.0 + std::abs(hi_v - lo_v));
    if (value < lo_v - pad || value > hi_v + pad)
        throw InversionFailure("wp inversion target outside [e3, e2]");
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (wp_gamma(L, mid) < value)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

DiscreteMeasure christoffel_weights(const JacobiMatrix& J, const EOPFamily& fam) {
    require_symmetric(fam, "christoffel_weights");
    const TridiagonalSpectrum sp = jacobi_spectrum(J);
    DiscreteMeasure mu;
    const double h0 = fam.norm(0);
    for (int k = 0; k < J.size; ++k) {
        mu.atoms_t.push_back(wp_invert_gamma(fam.lattice, sp.values[k]));
        const double u0 = sp.vectors[k][0];
        mu.masses.push_back(h0 * u0 * u0);
    }
    return mu;
}

double discrete_orthogonality_residual(const DiscreteMeasure& mu, const EOPFamily& fam, int n) {
    double worst = 0.0;
    const int K = static_cast<int>(mu.atoms_t.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = 0.0;
            for (int k = 0; k < K; ++k)
                s += mu.masses[k] * eval_gamma(fam, 2 * i, mu.atoms_t[k]) *
                     eval_gamma(fam, 2 * j, mu.atoms_t[k]);
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

namespace {

// k-fold Heine integral at one point z (t-parameter). Throws for k > 2.
double heine_integral(const EOPFamily& fam, const MomentTable& moments, int k, HeineMode mode,
                      double tz) {
    if (k > 2) throw DimensionTooLarge("Heine integral limited to k <= 2");
    const TorusLattice& L = fam.lattice;
    const double pz = wp_gamma(L, tz);
    const double ppz = wp_prime_gamma(L, tz);
    const bool odd = mode == HeineMode::Odd;

    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    const double delta = odd ? moments.hankel_hat[k] : moments.hankel[k];
    const double prefac = odd ? std::pow(-0.5, 2 * k + 1) * ppz : 1.0;

    if (k == 0) return prefac / (fact * delta);

    const int order = 96;
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    std::vector<double> t(order), wq(order), p(order), pp2(order), wgt(order);
    for (int j = 0; j < order; ++j) {
        t[j] = 0.5 * (gx[j] + 1.0);
        wq[j] = 0.5 * gw[j];
        p[j] = wp_gamma(L, t[j]);
        const double pp = wp_prime_gamma(L, t[j]);
        pp2[j] = pp * pp;
        wgt[j] = eval_weight_t(fam.weight, L, t[j]);
    }

    double total = 0.0;
    if (k == 1) {
        for (int j = 0; j < order; ++j) {
            double f = (pz - p[j]) * wgt[j];
            if (odd) f *= pp2[j];
            total += wq[j] * f;
        }
    } else {
        for (int j1 = 0; j1 < order; ++j1)
            for (int j2 = 0; j2 < order; ++j2) {
                const double vdm = p[j2] - p[j1];
                double f = (pz - p[j1]) * (pz - p[j2]) * vdm * vdm * wgt[j1] * wgt[j2];
                if (odd) f *= pp2[j1] * pp2[j2];
                total += wq[j1] * wq[j2] * f;
            }
    }
    return prefac * total / (fact * delta);
}

// Hankel determinant formula at one point.
double heine_determinant(const EOPFamily& fam, const MomentTable& moments, int k, HeineMode mode,
                         double tz) {
    const TorusLattice& L = fam.lattice;
    const bool odd = mode == HeineMode::Odd;
    const auto& mu = odd ? moments.nuhat : moments.nu;
    const double delta = odd ? moments.hankel_hat[k] : moments.hankel[k];
    const int m = k + 1;
    std::vector<double> a(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= k; ++j) a[static_cast<std::size_t>(i) * m + j] = mu[i + j];
    const double pz = wp_gamma(L, tz);
    const double head = odd ? -0.5 * wp_prime_gamma(L, tz) : 1.0;
    double pw = 1.0;
    for (int j = 0; j <= k; ++j) {
        a[static_cast<std::size_t>(k) * m + j] = head * pw;
        pw *= pz;
    }
    return lu_det(a, m).det / delta;
}

}  // namespace

HeineReport heine_verify(const EOPFamily& fam, const MomentTable& moments, int k, HeineMode mode,
                         const std::vector<double>& test_points) {
    require_symmetric(fam, "heine_verify");
    if (k < 0 || k > 4) throw DimensionTooLarge("heine_verify limited to k <= 4");
    const int degree = mode == HeineMode::Even ? 2 * k : 2 * k + 3;
    if (degree > fam.max_degree)
        throw InvalidDegree("heine_verify: degree exceeds family max");

    HeineReport rep;
    rep.k = k;
    rep.mode = mode;
    double scale = 0.0, worst_det = 0.0, worst_int = 0.0;
    for (double tz : test_points) {
        const double gs = eval_gamma_monic(fam, degree, tz);
        scale = std::max(scale, std::abs(gs));
        worst_det = std::max(worst_det, std::abs(heine_determinant(fam, moments, k, mode, tz) - gs));
        if (k <= 2)
            worst_int =
                std::max(worst_int, std::abs(heine_integral(fam, moments, k, mode, tz) - gs));
    }
    rep.det_vs_gs = worst_det / std::max(scale, 1e-300);
    rep.integral_vs_gs =
        k <= 2 ? worst_int / std::max(scale, 1e-300) : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

double even_cd_kernel_sum(const EOPFamily& fam, int n, double x, double y) {
    require_symmetric(fam, "even_cd_kernel_sum");
    if (2 * (n - 1) > fam.max_degree) throw InvalidDegree("even kernel sum needs 2(n-1) <= N");
    const double sw = std::sqrt(eval_weight_t(fam.weight, fam.lattice, x) *
                                eval_weight_t(fam.weight, fam.lattice, y));
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += eval_gamma(fam, 2 * i, x) * eval_gamma(fam, 2 * i, y);
    return sw * s;
}

double even_cd_kernel(const EOPFamily& fam, const FiveTermCoefficients& c5, int n, double x,
                      double y) {
    require_symmetric(fam, "even_cd_kernel");
    if (2 * n > fam.max_degree) throw InvalidDegree("even CD kernel needs 2n <= N");
    const double alpha = c5.at_a(2 * n - 1);
    const double px = wp_gamma(fam.lattice, x), py = wp_gamma(fam.lattice, y);
    if (std::abs(px - py) < 1e-12) throw DegeneratePoint("coincident wp values in even CD kernel");
    const double sw = std::sqrt(eval_weight_t(fam.weight, fam.lattice, x) *
                                eval_weight_t(fam.weight, fam.lattice, y));
    const double num = eval_gamma(fam, 2 * n, x) * eval_gamma(fam, 2 * n - 2, y) -
                       eval_gamma(fam, 2 * n, y) * eval_gamma(fam, 2 * n - 2, x);
    return alpha * sw * num / (px - py);
}

double partition_function(const EOPFamily& fam, int n) {
    require_symmetric(fam, "partition_function");
    if (n < 1) throw InvalidDegree("partition function needs n >= 1");
    if (n > 3) throw DimensionTooLarge("partition function tensor quadrature limited to n <= 3");
    const TorusLattice& L = fam.lattice;
    const int order = n == 3 ? 48 : 96;
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    std::vector<double> wq(order), p(order), wgt(order);
    for (int j = 0; j < order; ++j) {
        const double t = 0.5 * (gx[j] + 1.0);
        wq[j] = 0.5 * gw[j];
        p[j] = wp_gamma(L, t);
        wgt[j] = eval_weight_t(fam.weight, L, t);
    }
    if (n == 1) {
        double s = 0.0;
        for (int j = 0; j < order; ++j) s += wq[j] * wgt[j];
        return s;
    }
    if (n == 2) {
        double s = 0.0;
        for (int j1 = 0; j1 < order; ++j1)
            for (int j2 = 0; j2 < order; ++j2) {
                const double d = p[j1] - p[j2];
                s += wq[j1] * wq[j2] * d * d * wgt[j1] * wgt[j2];
            }
        return s;
    }
    double s = 0.0;
    for (int j1 = 0; j1 < order; ++j1)
        for (int j2 = 0; j2 < order; ++j2) {
            const double d12 = p[j1] - p[j2];
            const double w12 = wq[j1] * wq[j2] * d12 * d12 * wgt[j1] * wgt[j2];
            for (int j3 = 0; j3 < order; ++j3) {
                const double d13 = p[j1] - p[j3], d23 = p[j2] - p[j3];
                s += w12 * wq[j3] * d13 * d13 * d23 * d23 * wgt[j3];
            }
        }
    return s;
}

double partition_function_andreief(const EOPFamily& fam, int n) {
    require_symmetric(fam, "partition_function_andreief");
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= fam.norm(2 * i);
    return fact * prod;
}

double determinantal_identity_residual(const EOPFamily& fam, int n, double Zn,
                                       const std::vector<double>& points) {
    require_symmetric(fam, "determinantal_identity_residual");
    if (static_cast<int>(points.size()) != n)
        throw std::invalid_argument("determinantal identity needs n points");
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i) * n + j] = even_cd_kernel_sum(fam, n, points[i], points[j]);
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    const double lhs = lu_det(a, n).det / fact;

    double rhs = 1.0 / Zn;
    for (int i = 0; i < n; ++i) {
        rhs *= eval_weight_t(fam.weight, fam.lattice, points[i]);
        for (int j = i + 1; j < n; ++j) {
            const double d = wp_gamma(fam.lattice, points[i]) - wp_gamma(fam.lattice, points[j]);
            rhs *= d * d;
        }
    }
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

std::vector<double> curious_identity_coefficients(const EOPFamily& fam, int n) {
    if (fam.weight.kind != WeightKind::Unity)
        throw RequiresUnityWeight("the derivative expansion identity holds for w = 1");
    if (n + 1 > fam.max_degree || n < 2)
        throw InvalidDegree("curious identity needs 2 <= n <= N-1");
    const auto& rule = fam.rule;
    const std::size_t M = rule.t.size();
    std::vector<double> dvals(M);
    for (std::size_t j = 0; j < M; ++j) dvals[j] = eval_gamma_d1(fam, n, rule.t[j]);
    std::vector<double> out(n + 2, 0.0);
    std::vector<double> prod(M);
    for (int k = 0; k <= n + 1; ++k) {
        if (k == 1) continue;
        const int pos = basis_position(k);
        for (std::size_t j = 0; j < M; ++j)
            prod[j] = rule.w[j] * dvals[j] * fam.ortho_nodes[pos][j];
        out[k] = accumulate(prod);
    }
    return out;
}

double curious_identity_residual(const EOPFamily& fam, int n, const std::vector<double>& coeffs,
                                 const std::vector<double>& test_points) {
    double worst = 0.0;
    for (double t : test_points) {
        double rhs = 0.0;
        for (int j = n - 1; j <= n + 1; ++j) {
            if (j == 1 || j < 0) continue;
            rhs += coeffs[j] * eval_gamma(fam, j, t);
        }
        worst = std::max(worst, std::abs(eval_gamma_d1(fam, n, t) - rhs));
    }
    return worst;
}

}  // namespace eopk
