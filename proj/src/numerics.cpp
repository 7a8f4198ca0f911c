#include "eopk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace eopk {

Accumulation accumulation_mode() {
    static const Accumulation mode = [] {
        const char* env = std::getenv("EOPK_PRECISION");
        if (env && std::strcmp(env, "dd") == 0) return Accumulation::Compensated;
        return Accumulation::Plain;
    }();
    return mode;
}

namespace {

double sum_plain(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

double sum_neumaier(std::span<const double> x) {
    double s = 0.0, comp = 0.0;
    for (double v : x) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            comp += (s - t) + v;
        else
            comp += (v - t) + s;
        s = t;
    }
    return s + comp;
}

}  // namespace

double accumulate(std::span<const double> x) {
    return accumulation_mode() == Accumulation::Compensated ? sum_neumaier(x) : sum_plain(x);
}

double weighted_sum(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    if (accumulation_mode() == Accumulation::Compensated) {
        std::vector<double> prod(n);
        for (std::size_t i = 0; i < n; ++i) prod[i] = a[i] * b[i];
        return sum_neumaier(prod);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_sum(std::span<const double> a, std::span<const double> b,
                    std::span<const double> c) {
    const std::size_t n = a.size();
    if (accumulation_mode() == Accumulation::Compensated) {
        std::vector<double> prod(n);
        for (std::size_t i = 0; i < n; ++i) prod[i] = a[i] * b[i] * c[i];
        return sum_neumaier(prod);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = -p1 / pp;
            z += dz;
            if (std::abs(dz) < 4.0 * eps) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

LuResult lu_det(std::vector<double>& a, int n) {
    LuResult res;
    if (n == 0) {
        res.det = 1.0;
        res.cond1 = 1.0;
        return res;
    }
    auto at = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    double norm1 = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(at(i, j));
        norm1 = std::max(norm1, col);
    }

    std::vector<int> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            std::swap(piv[k], piv[p]);
            det = -det;
        }
        if (at(k, k) == 0.0) {
            res.singular = true;
            res.det = 0.0;
            res.cond1 = std::numeric_limits<double>::infinity();
            return res;
        }
        det *= at(k, k);
        for (int i = k + 1; i < n; ++i) {
            at(i, k) /= at(k, k);
            for (int j = k + 1; j < n; ++j) at(i, j) -= at(i, k) * at(k, j);
        }
    }
    res.det = det;

    // Explicit inverse for the 1-norm condition estimate; matrices here are tiny.
    std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
    for (int col = 0; col < n; ++col) {
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) x[i] = (piv[i] == col) ? 1.0 : 0.0;
        for (int i = 1; i < n; ++i)
            for (int j = 0; j < i; ++j) x[i] -= at(i, j) * x[j];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) x[i] -= at(i, j) * x[j];
            x[i] /= at(i, i);
        }
        for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + col] = x[i];
    }
    double inorm1 = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(inv[static_cast<std::size_t>(i) * n + j]);
        inorm1 = std::max(inorm1, col);
    }
    res.cond1 = norm1 * inorm1;
    return res;
}

TridiagonalSpectrum tridiagonal_eigs(std::vector<double> d, std::vector<double> e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return {};
    if (static_cast<int>(e.size()) != std::max(0, n - 1))
        throw std::invalid_argument("tridiagonal_eigs: off-diagonal size mismatch");

    // z holds the accumulated rotations; starts as the identity.
    std::vector<std::vector<double>> z(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) z[i][i] = 1.0;

    e.push_back(0.0);  // sentinel

    // Implicit-shift QL (EISPACK tql2 layout).
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("tridiagonal_eigs: too many QL iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = z[k][i + 1];
                        z[k][i + 1] = s * z[k][i] + c * f;
                        z[k][i] = c * z[k][i] - s * f;
                    }
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    // Sort ascending, carrying eigenvectors along.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&d](int a, int b) { return d[a] < d[b]; });

    TridiagonalSpectrum out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        out.values[k] = d[order[k]];
        for (int i = 0; i < n; ++i) out.vectors[k][i] = z[i][order[k]];
    }
    return out;
}

}  // namespace eopk
