#pragma once

#include <array>
#include <map>
#include <vector>

#include "eopk/family.hpp"

namespace eopk {

/// Five-term coefficients: wp pi_n = a_{n+1} pi_{n+2} + b_{n+1} pi_{n+1}
///                                  + c_n pi_n + b_n pi_{n-1} + a_{n-1} pi_{n-2}.
/// Boundary conventions: a_2 = b_1 = b_2 = 0, c_1 = 1, anything touching a
/// negative degree is 0. Stored entries take precedence over the conventions,
/// so perturbation tests may override structural zeros.
struct FiveTermCoefficients {
    std::map<int, double> a, b, c;
    double max_asymmetry = 0.0;  // max |c_{k,n} - c_{n,k}| seen during extraction

    double at_a(int m) const;
    double at_b(int m) const;
    double at_c(int m) const;
};

/// Seven-term coefficients: wp' pi_n = p_{n+3} pi_{n+3} + q_{n+2} pi_{n+2}
///   + r_{n+1} pi_{n+1} + s_n pi_n + r_n pi_{n-1} + q_n pi_{n-2} + p_n pi_{n-3}.
struct SevenTermCoefficients {
    std::map<int, double> p, q, r, s;
    double max_asymmetry = 0.0;

    double at_p(int m) const;
    double at_q(int m) const;
    double at_r(int m) const;
    double at_s(int m) const;
};

/// 2x2 block form of the five-term relation (matrix three-term recurrence).
struct MatrixRecurrence {
    const FiveTermCoefficients* coeffs;
    std::array<std::array<double, 2>, 2> A(int even_index) const;   // A_{2n}
    std::array<std::array<double, 2>, 2> Bm(int even_index) const;  // B_{2n}
};

FiveTermCoefficients extract_five_term(const EOPFamily& fam);
SevenTermCoefficients extract_seven_term(const EOPFamily& fam);

/// |lhs - rhs| of the five-term relation at the gamma point t.
double residual_five_term(const EOPFamily& fam, const FiveTermCoefficients& c5, int n, double t);
double residual_seven_term(const EOPFamily& fam, const SevenTermCoefficients& c7, int n, double t);

/// 2-norm of the vector residual of the matrix three-term recurrence at
/// Pi_{2n} = (pi_{2n+1}, pi_{2n})^T.
double matrix_recurrence_residual(const EOPFamily& fam, const MatrixRecurrence& M, int n,
                                  double t);

/// Cross-validation of the two expansions of wp'^2 pi_n: coefficients of
/// (4 W^3 - g2 W - g3) e_n versus V^2 e_n where W, V are the penta-/hepta-diagonal
/// recurrence operators. Offsets run -6..6.
struct AppendixBReport {
    int n = 0;
    std::array<double, 13> five_route{};   // B_{n+i} via five-term, i = -6..6
    std::array<double, 13> seven_route{};  // via seven-term
    std::array<double, 13> residual{};
    double max_residual() const;
};

AppendixBReport verify_appendix_b(const FiveTermCoefficients& c5, const SevenTermCoefficients& c7,
                                  double g2, double g3, int n, int max_degree);

/// Family reconstructed from coupled recurrence coefficients (elliptic
/// Shohat-Favard): pi_0 = 1/sqrt(lambda1), pi_1 = 0, pi_2 and pi_3 from the
/// five/seven-term rows of pi_0, higher degrees from the five-term rows.
/// consistency_residual is the max unused seven-term row residual (coefficient
/// infinity norm); above 1e-5 the reconstruction throws InconsistentCoefficients.
struct ReconstructedFamily {
    int max_degree = 0;
    std::vector<std::vector<double>> ortho_coeffs;  // by basis position
    double consistency_residual = 0.0;
};

ReconstructedFamily shohat_favard_reconstruct(const FiveTermCoefficients& c5,
                                              const SevenTermCoefficients& c7, double lambda1,
                                              int N, double g2, double g3);

}  // namespace eopk
