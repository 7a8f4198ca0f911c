#pragma once

#include <vector>

#include "eopk/family.hpp"
#include "eopk/numerics.hpp"
#include "eopk/recurrence.hpp"

namespace eopk {

/// Even/odd split of a symmetric-weight family, with the worst coefficient
/// leakage onto the opposite-parity basis elements.
struct SplitFamily {
    std::vector<int> even_degrees;  // 0, 2, 4, ...
    std::vector<int> odd_degrees;   // 3, 5, ...
    double max_even_leak = 0.0;     // |odd-basis coefficient| over even members
    double max_odd_leak = 0.0;
};

SplitFamily split_family(const EOPFamily& fam);

/// Residual of the symmetric three-term relation
/// wp pi_n = a_{n+1} pi_{n+2} + c_n pi_n + a_{n-1} pi_{n-2} at the gamma point t.
double three_term_check(const EOPFamily& fam, const FiveTermCoefficients& c5, int n, double t);

/// Residual of the symmetric four-term relation
/// wp' pi_n = p_{n+3} pi_{n+3} + r_{n+1} pi_{n+1} + r_n pi_{n-1} + p_n pi_{n-3}.
double four_term_check(const EOPFamily& fam, const SevenTermCoefficients& c7, int n, double t);

/// Jacobi matrix of the even family: diagonal beta_k = c_{2k},
/// off-diagonal alpha_k = a_{2k-1}.
struct JacobiMatrix {
    int size = 0;
    std::vector<double> beta;
    std::vector<double> alpha;  // size-1 entries, all positive
};

JacobiMatrix build_jacobi(const FiveTermCoefficients& c5, int n);
TridiagonalSpectrum jacobi_spectrum(const JacobiMatrix& J);

struct InterlacingResult {
    bool strict = false;
    double min_margin = 0.0;
};

/// Cauchy interlacing of spectra of J_n and J_{n-1}.
InterlacingResult interlacing_check(const TridiagonalSpectrum& larger,
                                    const TridiagonalSpectrum& smaller);

/// Discrete measure mu_n = sum lambda_k delta_{z_k} from the spectrum of J_n,
/// atoms recovered by wp-inversion on gamma/2 (bisection; wp is monotone there).
struct DiscreteMeasure {
    std::vector<double> atoms_t;   // t in (0, 1/2)
    std::vector<double> masses;    // lambda_k = h_0 u_k[0]^2 > 0
};

DiscreteMeasure christoffel_weights(const JacobiMatrix& J, const EOPFamily& fam);

/// max_{i,j < n} |sum_k lambda_k pi_{2i}(z_k) pi_{2j}(z_k) - delta_ij|.
double discrete_orthogonality_residual(const DiscreteMeasure& mu, const EOPFamily& fam, int n);

/// Inverse of wp restricted to gamma/2: returns t in [0, 1/2] with
/// wp(tau/2 + t) = value. Throws InversionFailure outside [e3, e2].
double wp_invert_gamma(const TorusLattice& L, double value);

enum class HeineMode { Even, Odd };

/// Three-way comparison of the monic P (Gram-Schmidt) against the Hankel
/// determinant formula and, for k <= 2, the k-fold Heine integral.
struct HeineReport {
    int k = 0;
    HeineMode mode = HeineMode::Even;
    double det_vs_gs = 0.0;       // max relative residual, routes (ii)-(i)
    double integral_vs_gs = 0.0;  // routes (iii)-(i); NaN when k > 2
};

HeineReport heine_verify(const EOPFamily& fam, const MomentTable& moments, int k, HeineMode mode,
                         const std::vector<double>& test_points);

/// Even-family CD kernel in closed form:
/// alpha_n sqrt(w(x) w(y)) (pi_{2n}(x) pi_{2n-2}(y) - pi_{2n}(y) pi_{2n-2}(x)) / (wp(x)-wp(y))
/// with alpha_n = a_{2n-1}.
double even_cd_kernel(const EOPFamily& fam, const FiveTermCoefficients& c5, int n, double x,
                      double y);
/// The same kernel in sum form sqrt(w w) sum_{i<n} pi_{2i}(x) pi_{2i}(y).
double even_cd_kernel_sum(const EOPFamily& fam, int n, double x, double y);

/// Partition function Z_n = int...int prod |wp(x_i)-wp(x_j)|^2 prod w(x_i) dx
/// by tensor quadrature; n <= 3 (DimensionTooLarge beyond).
double partition_function(const EOPFamily& fam, int n);
/// Andreief route: Z_n = n! * prod_{i<n} h_{2i}.
double partition_function_andreief(const EOPFamily& fam, int n);

/// Pointwise residual of (1/n!) det[K_n(x_i,x_j)] = (1/Z_n) prod|dwp|^2 prod w.
double determinantal_identity_residual(const EOPFamily& fam, int n, double Zn,
                                       const std::vector<double>& points);

/// Expansion coefficients of pi_n' over the family (unity weight only):
/// c_{j,n} = int pi_n' pi_j dt, j = 0..n+1. Throws RequiresUnityWeight.
std::vector<double> curious_identity_coefficients(const EOPFamily& fam, int n);

/// Max over test points of |pi_n'(t) - sum_{j=n-1}^{n+1} c_{j,n} pi_j(t)|.
double curious_identity_residual(const EOPFamily& fam, int n,
                                 const std::vector<double>& coeffs,
                                 const std::vector<double>& test_points);

}  // namespace eopk
