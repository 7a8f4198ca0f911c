#pragma once

#include <complex>
#include <vector>

#include "eopk/lattice.hpp"
#include "eopk/quadrature.hpp"

namespace eopk {

/// Value of the basis element E_n at z: E_0 = 1, E_{2k} = wp^k,
/// E_{2k+3} = -(1/2) wp' wp^k. Throws InvalidDegree for n = 1 or n < 0.
std::complex<double> basis_eval(const TorusLattice& L, int n, std::complex<double> z);

/// One member of a family, as coefficients over the basis {E_m : m = 0,2,3,...}.
/// Degree-ordered positions: position 0 holds E_0, position p >= 1 holds E_{p+1}.
struct EllipticPolynomial {
    int degree = 0;
    std::vector<double> coeffs;  // over basis positions, highest at pos_of(degree)
    double norm_h = 0.0;         // squared monic norm; 0 marks "absent"
    bool monic = true;
};

/// Coefficient of z^{-degree} in the Laurent expansion at 0 (each basis element
/// has unit head, so this is the leading basis coefficient).
double laurent_head(const EllipticPolynomial& p);

int basis_position(int degree);       // -1 for degree 1 or < 0
int basis_degree_at(int position);    // inverse of basis_position

/// Orthonormal family pi_0, pi_2, ..., pi_N (pi_1 = 0) for a weight on gamma.
struct EOPFamily {
    TorusLattice lattice;
    WeightSpec weight;
    QuadratureRule rule;
    int max_degree = 0;

    // Indexed by basis position (see basis_position); dim = number of members.
    std::vector<std::vector<double>> monic_coeffs;
    std::vector<double> h;  // h[pos] = squared norm of monic member

    // Node caches used by extraction and kernel integrals.
    std::vector<double> weight_vals;              // w(t_j)
    std::vector<std::vector<double>> ortho_nodes; // orthonormal member values at nodes

    int dim() const { return static_cast<int>(h.size()); }

    double norm(int n) const;                  // h_n; throws InvalidDegree
    std::vector<double> ortho_coeffs(int n) const;
    EllipticPolynomial monic(int n) const;
    EllipticPolynomial orthonormal(int n) const;
};

/// Doubly reorthogonalized modified Gram-Schmidt over the node-sampled basis.
/// Throws DegenerateNorm when h_n < 1e-13 h_0.
EOPFamily gram_schmidt(const TorusLattice& L, const WeightSpec& w, const QuadratureRule& rule,
                       int N);

/// pi_n(z); n = 1 gives 0, n > N throws InvalidDegree.
std::complex<double> eval_poly(const EOPFamily& fam, int n, std::complex<double> z);
std::complex<double> eval_monic(const EOPFamily& fam, int n, std::complex<double> z);

/// Real evaluation on gamma in the t-parameterization, plus analytic d/dt
/// derivatives (basis derivatives via the curve equation; no finite differences).
double eval_gamma(const EOPFamily& fam, int n, double t);
double eval_gamma_monic(const EOPFamily& fam, int n, double t);
double eval_gamma_d1(const EOPFamily& fam, int n, double t);
double eval_gamma_d2(const EOPFamily& fam, int n, double t);

/// Evaluation from precomputed wp/wp' values (hot paths: zero scans, kernels).
double eval_coeffs_at(const std::vector<double>& coeffs, double wp_val, double wpp_val);
/// Arbitrary coefficient vector at a complex point.
std::complex<double> eval_coeffs_complex(const TorusLattice& L, const std::vector<double>& coeffs,
                                         std::complex<double> z);
double eval_coeffs_d1_at(const TorusLattice& L, const std::vector<double>& coeffs, double wp_val,
                         double wpp_val);
double eval_coeffs_d2_at(const TorusLattice& L, const std::vector<double>& coeffs, double wp_val,
                         double wpp_val);

/// Gram matrix of the orthonormal members by direct quadrature (test oracle).
std::vector<std::vector<double>> gram_matrix(const EOPFamily& fam);

}  // namespace eopk
