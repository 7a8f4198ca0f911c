#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "eopk/lattice.hpp"

namespace eopk {

enum class WeightKind { Unity, ExpP, ExpPPrime, Product };

/// Positive weight on the A-cycle, from the small DSL:
///   unity | exp_p:<alpha> | exp_pp:<beta> | prod(<spec>,<spec>)
/// exp_p weights are exp(alpha*Re wp), exp_pp are exp(beta*Re wp').
struct WeightSpec {
    WeightKind kind = WeightKind::Unity;
    double param = 0.0;
    std::vector<WeightSpec> factors;

    /// True iff symmetry about the midpoint of gamma is provable from the form:
    /// unity and exp_p always, exp_pp never, products of symmetric factors.
    bool symmetric() const;

    static WeightSpec unity() { return {}; }
    static WeightSpec exp_p(double alpha) { return {WeightKind::ExpP, alpha, {}}; }
    static WeightSpec exp_pp(double beta) { return {WeightKind::ExpPPrime, beta, {}}; }

    /// Parse the DSL; throws std::invalid_argument on malformed input.
    static WeightSpec parse(const std::string& s);
    std::string to_string() const;
};

/// Gauss-Legendre rule on gamma, parameterized by t in (0,1) with dz = dt.
/// Caches the real values of wp and wp' at the nodes.
struct QuadratureRule {
    int order = 0;
    double tau_im = 1.0;
    std::vector<double> t;       // nodes in (0,1)
    std::vector<double> w;       // weights, sum = 1
    std::vector<double> wp_t;    // Re wp(tau/2 + t_j)
    std::vector<double> wpp_t;   // Re wp'(tau/2 + t_j)
    double max_imag_residue = 0.0;  // diagnostic from node-cache construction
    long discarded_imag_count = 0;  // nodes where a nonzero imag part was dropped
};

/// Moments nu_k = int wp^k w dt, nuhat_k = (1/4) int wp'^2 wp^k w dt and their
/// Hankel determinants.
struct MomentTable {
    std::vector<double> nu;
    std::vector<double> nuhat;
    std::vector<double> hankel;      // Delta_k, k = 0..
    std::vector<double> hankel_hat;  // Delta-hat_k
    bool ill_conditioned = false;
    double max_cond = 0.0;
};

QuadratureRule build_rule(const TorusLattice& L, int N);

/// Doubles the order starting at `start` until all moments up to `gate_degree`
/// are stable under node doubling (< 1e-10), or throws QuadratureDivergence at 4096.
QuadratureRule build_converged_rule(const TorusLattice& L, const WeightSpec& w, int gate_degree,
                                    int start = 256);

/// Weight value at a point of gamma. Throws OffContour when Im z != tau_im/2.
double eval_weight(const WeightSpec& w, const TorusLattice& L, std::complex<double> z);
/// Same in the t-parameterization.
double eval_weight_t(const WeightSpec& w, const TorusLattice& L, double t);

/// Analytic continuation of the weight off gamma (wp and wp' are real on gamma,
/// so exp(alpha Re wp) continues to exp(alpha wp(z)) and likewise for wp').
std::complex<double> weight_analytic(const WeightSpec& w, const TorusLattice& L,
                                     std::complex<double> z);

/// Weight values at the nodes of a rule.
std::vector<double> weight_nodes(const WeightSpec& w, const TorusLattice& L,
                                 const QuadratureRule& rule);

/// <f,g> = int f g w dt over gamma for real-valued samplable functions.
double inner_product(const QuadratureRule& rule, const std::vector<double>& weight_vals,
                     const std::function<double(double)>& f,
                     const std::function<double(double)>& g);

MomentTable compute_moments(const QuadratureRule& rule, const WeightSpec& w,
                            const TorusLattice& L, int K);

}  // namespace eopk
