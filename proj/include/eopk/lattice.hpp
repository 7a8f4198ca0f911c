#pragma once

#include <complex>

namespace eopk {

/// Rectangular torus C/(Z + tau Z) with purely imaginary tau = i*tau_im.
///
/// All series data is derived from the nome qq = e^{2*pi*i*tau} = e^{-2*pi*tau_im},
/// which is real in (0,1); evaluation away from lattice points converges
/// geometrically after reduction to the fundamental domain.
struct TorusLattice {
    double tau_im = 1.0;     // tau = i*tau_im
    double g2 = 0.0;
    double g3 = 0.0;
    double e1 = 0.0;         // wp(1/2)
    double e2 = 0.0;         // wp((1+tau)/2)
    double e3 = 0.0;         // wp(tau/2)
    double eta1 = 0.0;       // zeta(z+1) = zeta(z) + 2*eta1
    int series_terms = 32;
    double qq = 0.0;         // e^{-2*pi*tau_im}

    std::complex<double> tau() const { return {0.0, tau_im}; }
    /// eta2 with zeta(z+tau) = zeta(z) + 2*eta2 (Legendre relation).
    std::complex<double> eta2() const { return std::complex<double>(0.0, eta1 * tau_im - M_PI); }
};

/// Build lattice invariants from Eisenstein q-series.
/// Throws NonPositiveTau, TruncationTooCoarse.
TorusLattice build_lattice(double tau_im, int series_terms = 32);

/// Weierstrass functions on the lattice. z may be any point off the lattice
/// (reduced internally); PoleProximity is thrown within 1e-12 of a lattice point.
std::complex<double> wp(const TorusLattice& L, std::complex<double> z);
std::complex<double> wp_prime(const TorusLattice& L, std::complex<double> z);
std::complex<double> wp_second(const TorusLattice& L, std::complex<double> z);
std::complex<double> zeta_w(const TorusLattice& L, std::complex<double> z);

/// Real values of wp / wp' on the A-cycle gamma = [tau/2, 1+tau/2], parameterized
/// by t in [0,1). The imaginary residue of the complex evaluation is discarded;
/// it is bounded by roundoff since wp, wp' are real on gamma.
double wp_gamma(const TorusLattice& L, double t);
double wp_prime_gamma(const TorusLattice& L, double t);
double wp_second_gamma(const TorusLattice& L, double t);

/// Distance from z to the nearest lattice point (after reduction).
double lattice_distance(const TorusLattice& L, std::complex<double> z);

}  // namespace eopk
