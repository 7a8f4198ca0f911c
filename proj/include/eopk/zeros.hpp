#pragma once

#include <vector>

#include "eopk/family.hpp"

namespace eopk {

/// Zeros of pi_n: on gamma (as t in [0,1), including the seam point t = 0) and,
/// for odd n, the single zero on the real interval (0,1).
struct ZeroSet {
    int degree = 0;
    std::vector<double> gamma_zeros;   // sorted t values
    std::vector<double> real_zeros;
    std::vector<double> gamma_residuals;  // |pi_n| at the refined points
    std::vector<double> real_residuals;
    int grid_used = 0;
};

/// Sign-change scan over the periodic circle t in [0,1), bisection to 1e-12 and
/// a Newton polish with the analytic derivative. The grid doubles (up to 65536)
/// until the count matches the parity law (n zeros for even n, n-1 for odd);
/// CountMismatch is thrown past that.
ZeroSet find_gamma_zeros(const EOPFamily& fam, int n, int grid_size = 2048);

/// The remaining zero of an odd-degree member on (0,1). Throws InvalidDegree
/// for even n, ZeroNotFound when no sign change is bracketed.
double find_real_zero(const EOPFamily& fam, int n);

/// Norm of the zero-divisor sum reduced modulo the lattice (Abel's theorem says
/// it vanishes). Throws IncompleteZeroSet when counts disagree with the degree.
double abel_sum_check(const ZeroSet& zs, const TorusLattice& L);

/// Simplicity margin |pi_n'(t*)| / max|pi_n| for every located gamma zero.
std::vector<double> simplicity_margins(const EOPFamily& fam, const ZeroSet& zs);

}  // namespace eopk
