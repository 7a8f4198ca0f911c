#pragma once

#include <array>
#include <complex>
#include <vector>

#include "eopk/family.hpp"
#include "eopk/recurrence.hpp"

namespace eopk {

using Mat2c = std::array<std::array<std::complex<double>, 2>, 2>;

/// Weighted elliptic Cauchy transform C(p)(z) = int p(w) w(w) (zeta(w-z)-zeta(w)) dw/(2 pi i)
/// for one polynomial of a family. Near gamma the simple pole is subtracted
/// analytically (the moment integral of the bare kernel is iz eta1/pi plus a
/// side-dependent integer, calibrated once); the rule is refined when the
/// evaluation point sits between nodes.
class CauchyTransform {
  public:
    /// Transform of an arbitrary coefficient vector over the family basis.
    CauchyTransform(const EOPFamily& fam, const EllipticPolynomial& p);
    /// Transform of the monic member P_degree.
    CauchyTransform(const EOPFamily& fam, int degree);

    std::complex<double> operator()(std::complex<double> z) const;

  private:
    const EOPFamily* fam_;
    std::vector<double> coeffs_;
    double mu_ = 0.0;  // int p w dt; nonzero only for degree 0
    struct Grid {
        int order = 0;
        std::vector<double> t, wq, g;            // nodes, dt-weights, p(t) w(t)
        std::vector<std::complex<double>> zeta0; // zeta(tau/2 + t_j)
    };
    std::vector<Grid> grids_;  // increasing resolution
    double k_below_ = 0.0, k_above_ = 0.0;  // branch constants of the kernel moment

    const Grid& grid_for(double dist) const;
    std::complex<double> eval_reduced(std::complex<double> z) const;
};

/// Riemann-Hilbert solution Y_n built from monic EOPs and Cauchy transforms.
struct RHSolution {
    const EOPFamily* family = nullptr;
    int degree = 0;  // n >= 3
    CauchyTransform cauchy_n;
    CauchyTransform cauchy_n1;

    Mat2c eval(std::complex<double> z) const;
};

/// C_w applied to a polynomial over the family basis. Throws TooCloseToContour
/// when distance(z, gamma) <= 1e-6.
std::complex<double> cauchy_transform(const EOPFamily& fam, const EllipticPolynomial& p,
                                      std::complex<double> z);

RHSolution assemble_Y(const EOPFamily& fam, int n);

std::complex<double> det_Y(const RHSolution& Y, std::complex<double> z);
std::complex<double> det_Y(const EOPFamily& fam, int n, std::complex<double> z);

/// Residual |K-hat_n(x,y) - RHS| of the CD kernel assembled from the three
/// adjugate-sandwich bracket terms of Y_{n-2}, Y_{n-1}, Y_n, with boundary values
/// taken at +i*eps and one Richardson step in eps. Needs n >= 5.
double cd_rhp_identity(const EOPFamily& fam, const FiveTermCoefficients& c5, int n, double x,
                       double y, double eps = 1e-4);

/// Same residual from preassembled solutions (Yn2 = Y_{n-2}, Yn1 = Y_{n-1}).
double cd_rhp_identity(const RHSolution& Yn2, const RHSolution& Yn1, const RHSolution& Yn,
                       const FiveTermCoefficients& c5, double x, double y, double eps = 1e-4);

}  // namespace eopk
