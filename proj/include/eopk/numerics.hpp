#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace eopk {

/// Accumulation mode for quadrature sums, selected once per process via
/// EOPK_PRECISION=double|dd (default: double).
enum class Accumulation { Plain, Compensated };

Accumulation accumulation_mode();

/// Sum of x_i, honoring the process accumulation mode. Compensated mode uses
/// Neumaier's variant of Kahan summation.
double accumulate(std::span<const double> x);

/// Sum of a_i * b_i.
double weighted_sum(std::span<const double> a, std::span<const double> b);

/// Sum of a_i * b_i * c_i.
double weighted_sum(std::span<const double> a, std::span<const double> b,
                    std::span<const double> c);

/// Gauss-Legendre nodes and weights on (-1, 1), by Newton iteration on the
/// Legendre recurrence. Accurate to machine precision for n up to at least 10^4.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct LuResult {
    double det = 0.0;
    double cond1 = 0.0;       // 1-norm condition estimate
    bool singular = false;
};

/// Determinant and condition estimate of a dense matrix via partially pivoted LU.
/// `a` is row-major n x n and is left clobbered.
LuResult lu_det(std::vector<double>& a, int n);

struct TridiagonalSpectrum {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th eigenvector
};

/// Eigen-decomposition of a symmetric tridiagonal matrix (diagonal d, off-diagonal e
/// with e.size() == d.size()-1) by the implicit-shift QL algorithm.
TridiagonalSpectrum tridiagonal_eigs(std::vector<double> d, std::vector<double> e);

}  // namespace eopk
