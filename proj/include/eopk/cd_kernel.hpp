#pragma once

#include <vector>

#include "eopk/family.hpp"
#include "eopk/recurrence.hpp"

namespace eopk {

/// Christoffel-Darboux kernel K-hat_n(x,y) = sum_{j=0}^{n-2} pi_j(x) pi_j(y)
/// (the j = 1 term is absent). Points are gamma parameters t in [0,1).
struct CDKernel {
    const EOPFamily* family = nullptr;
    int degree = 0;  // n; sum form needs n >= 2, closed form n >= 4
    FiveTermCoefficients coeffs;
    mutable long near_confluent_count = 0;  // diagnostic: closed-form calls delegated
};

CDKernel make_cd_kernel(const EOPFamily& fam, const FiveTermCoefficients& c5, int n);

double kernel_sum(const CDKernel& K, double x, double y);

/// Three-bracket closed form; |wp(x)-wp(y)| below the switch threshold delegates
/// to the exact sum (counted in near_confluent_count).
double kernel_cd(const CDKernel& K, double x, double y);

/// Confluent (y -> x) form via analytic derivatives; requires |wp'(x)| > 1e-8,
/// else DegeneratePoint.
double kernel_confluent(const CDKernel& K, double x);

/// Degenerate-point form via second derivatives at x in {tau/2, (1+tau)/2}
/// (t = 0 or 1/2 up to 1e-10); NotDegenerate otherwise.
double kernel_degenerate(const CDKernel& K, double x);

/// Number of orthonormal members among degrees 0..n-1 (degree 1 excluded);
/// this is the trace of the correlation kernel below.
int member_count(int n);

/// Correlation kernel K_n(x,y) = sqrt(w(x)) sqrt(w(y)) K-hat_{n+1}(x,y).
double correlation_kernel(const EOPFamily& fam, int n, double x, double y);

/// Projection kernel onto the first m nonzero members (degrees {0} u {2..m}).
double projection_kernel(const EOPFamily& fam, int m, double x, double y);

/// Joint density of the n-point process: (1/n!) det[K(x_i,x_j)] with the rank-n
/// projection kernel. Throws DuplicatePoints for coincident points.
double joint_pdf(const EOPFamily& fam, int n, const std::vector<double>& points);

/// Trace int K_n(x,x) dx by the family rule.
double kernel_trace(const EOPFamily& fam, int n);

/// Reproducing residual |int K_n(x,s) K_n(s,y) ds - K_n(x,y)|.
double reproducing_residual(const EOPFamily& fam, int n, double x, double y);

/// det[K_n(x_i,x_j)] over an arbitrary point set.
double correlation_determinant(const EOPFamily& fam, int n, const std::vector<double>& points);

/// Compressed eigenvalue-problem residual for the pentadiagonal J (paper's
/// spectral remark): || J_{n,n+1} v - wp(x0) P v || at a zero x0 of pi_{n+1}.
double pentadiagonal_residual(const EOPFamily& fam, const FiveTermCoefficients& c5, int n,
                              double x0);

}  // namespace eopk
