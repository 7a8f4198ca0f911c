#include "eopk/cd_kernel.hpp"

#include <cmath>
#include <string>

#include "eopk/errors.hpp"
#include "eopk/numerics.hpp"

namespace eopk {

namespace {

constexpr double kConfluentSwitch = 1e-4;  // |wp(x)-wp(y)| below this: use the sum

void check_point(double t) {
    if (!(t >= 0.0 && t < 1.0))
        throw OffContour("gamma parameter must lie in [0,1), got " + std::to_string(t));
}

}  // namespace

CDKernel make_cd_kernel(const EOPFamily& fam, const FiveTermCoefficients& c5, int n) {
    if (n < 2 || n > fam.max_degree)
        throw InvalidDegree("CD kernel needs 2 <= n <= family max degree");
    return CDKernel{&fam, n, c5, 0};
}

double kernel_sum(const CDKernel& K, double x, double y) {
    check_point(x);
    check_point(y);
    const EOPFamily& fam = *K.family;
    double s = 0.0;
    for (int j = 0; j <= K.degree - 2; ++j) {
        if (j == 1) continue;
        s += eval_gamma(fam, j, x) * eval_gamma(fam, j, y);
    }
    return s;
}

double kernel_cd(const CDKernel& K, double x, double y) {
    check_point(x);
    check_point(y);
    if (K.degree < 4) throw InvalidDegree("closed-form CD kernel needs n >= 4");
    const EOPFamily& fam = *K.family;
    const int n = K.degree;
    const double px = wp_gamma(fam.lattice, x), py = wp_gamma(fam.lattice, y);
    if (std::abs(px - py) < kConfluentSwitch) {
        ++K.near_confluent_count;
        return kernel_sum(K, x, y);
    }
    auto bracket = [&](int i, int k) {
        return eval_gamma(fam, i, x) * eval_gamma(fam, k, y) -
               eval_gamma(fam, i, y) * eval_gamma(fam, k, x);
    };
    const double num = K.coeffs.at_a(n - 1) * bracket(n, n - 2) +
                       K.coeffs.at_a(n - 2) * bracket(n - 1, n - 3) +
                       K.coeffs.at_b(n - 1) * bracket(n - 1, n - 2);
    return num / (px - py);
}

double kernel_confluent(const CDKernel& K, double x) {
    check_point(x);
    if (K.degree < 4) throw InvalidDegree("confluent CD kernel needs n >= 4");
    const EOPFamily& fam = *K.family;
    const int n = K.degree;
    const double pp = wp_prime_gamma(fam.lattice, x);
    if (std::abs(pp) <= 1e-8)
        throw DegeneratePoint("wp'(x) vanishes; use kernel_degenerate");
    auto wronskian = [&](int i, int k) {
        return eval_gamma_d1(fam, i, x) * eval_gamma(fam, k, x) -
               eval_gamma(fam, i, x) * eval_gamma_d1(fam, k, x);
    };
    const double num = K.coeffs.at_a(n - 1) * wronskian(n, n - 2) +
                       K.coeffs.at_a(n - 2) * wronskian(n - 1, n - 3) +
                       K.coeffs.at_b(n - 1) * wronskian(n - 1, n - 2);
    return num / pp;
}

double kernel_degenerate(const CDKernel& K, double x) {
    check_point(x);
    if (K.degree < 4) throw InvalidDegree("degenerate CD kernel needs n >= 4");
    const double d0 = std::min(x, 1.0 - x);           // distance to t = 0
    const double dh = std::abs(x - 0.5);              // distance to t = 1/2
    if (std::min(d0, dh) > 1e-10)
        throw NotDegenerate("x is not a half-period point of gamma");
    const EOPFamily& fam = *K.family;
    const int n = K.degree;
    const double pps = wp_second_gamma(fam.lattice, x);
    auto wronskian2 = [&](int i, int k) {
        return eval_gamma_d2(fam, i, x) * eval_gamma(fam, k, x) -
               eval_gamma(fam, i, x) * eval_gamma_d2(fam, k, x);
    };
    const double num = K.coeffs.at_a(n - 1) * wronskian2(n, n - 2) +
                       K.coeffs.at_a(n - 2) * wronskian2(n - 1, n - 3) +
                       K.coeffs.at_b(n - 1) * wronskian2(n - 1, n - 2);
    return num / pps;
}

int member_count(int n) {
    if (n <= 0) return 0;
    return n == 1 ? 1 : n - 1;
}

double correlation_kernel(const EOPFamily& fam, int n, double x, double y) {
    check_point(x);
    check_point(y);
    if (n + 1 > fam.max_degree + 2 || n < 1)
        throw InvalidDegree("correlation kernel needs 1 <= n, n-1 <= family max degree");
    const double sw = std::sqrt(eval_weight_t(fam.weight, fam.lattice, x)) *
                      std::sqrt(eval_weight_t(fam.weight, fam.lattice, y));
    double s = 0.0;
    for (int j = 0; j <= n - 1; ++j) {
        if (j == 1) continue;
        s += eval_gamma(fam, j, x) * eval_gamma(fam, j, y);
    }
    return sw * s;
}

double projection_kernel(const EOPFamily& fam, int m, double x, double y) {
    // First m nonzero members: degrees {0} u {2..m}.
    if (m < 1) throw InvalidDegree("projection kernel needs at least one member");
    return correlation_kernel(fam, m + 1, x, y);
}

double correlation_determinant(const EOPFamily& fam, int n, const std::vector<double>& points) {
    const int m = static_cast<int>(points.size());
    std::vector<double> a(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = correlation_kernel(fam, n, points[i], points[j]);
            a[static_cast<std::size_t>(i) * m + j] = v;
            a[static_cast<std::size_t>(j) * m + i] = v;
        }
    return lu_det(a, m).det;
}

double joint_pdf(const EOPFamily& fam, int n, const std::vector<double>& points) {
    if (static_cast<int>(points.size()) != n)
        throw std::invalid_argument("joint_pdf: need exactly n points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(points[i] - points[j]) < 1e-14)
                throw DuplicatePoints("coincident points in joint_pdf");
    // Rank-n projection makes the n-point density normalized.
    const int m = n;
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = projection_kernel(fam, m, points[i], points[j]);
            a[static_cast<std::size_t>(i) * n + j] = v;
            a[static_cast<std::size_t>(j) * n + i] = v;
        }
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    return lu_det(a, n).det / fact;
}

double kernel_trace(const EOPFamily& fam, int n) {
    const auto& rule = fam.rule;
    std::vector<double> vals(rule.t.size());
    for (std::size_t j = 0; j < rule.t.size(); ++j)
        vals[j] = correlation_kernel(fam, n, rule.t[j], rule.t[j]);
    return weighted_sum(rule.w, vals);
}

double reproducing_residual(const EOPFamily& fam, int n, double x, double y) {
    const auto& rule = fam.rule;
    std::vector<double> vals(rule.t.size());
    for (std::size_t j = 0; j < rule.t.size(); ++j)
        vals[j] = correlation_kernel(fam, n, x, rule.t[j]) *
                  correlation_kernel(fam, n, rule.t[j], y);
    return std::abs(weighted_sum(rule.w, vals) - correlation_kernel(fam, n, x, y));
}

double pentadiagonal_residual(const EOPFamily& fam, const FiveTermCoefficients& c5, int n,
                              double x0) {
    if (n + 1 > fam.max_degree) throw InvalidDegree("pentadiagonal residual needs n+1 <= N");
    // J rows 0..n-1, columns 0..n; row m carries (a_{m-1}, b_m, c_m, b_{m+1}, a_{m+1}).
    std::vector<double> v(n + 1);
    for (int k = 0; k <= n; ++k) v[k] = eval_gamma(fam, k, x0);
    const double p0 = wp_gamma(fam.lattice, x0);
    double norm2 = 0.0;
    for (int m = 0; m < n; ++m) {
        double row = c5.at_c(m) * v[m];
        if (m - 2 >= 0) row += c5.at_a(m - 1) * v[m - 2];
        if (m - 1 >= 0) row += c5.at_b(m) * v[m - 1];
        if (m + 1 <= n) row += c5.at_b(m + 1) * v[m + 1];
        if (m + 2 <= n) row += c5.at_a(m + 1) * v[m + 2];
        const double r = row - p0 * v[m];
        norm2 += r * r;
    }
    return std::sqrt(norm2);
}

}  // namespace eopk
