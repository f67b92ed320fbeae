#ifndef KCN_WAVEFUNCTIONS_HPP
#define KCN_WAVEFUNCTIONS_HPP

#include <functional>

#include "kcn/spectrum.hpp"

namespace kcn {

struct AngularSolution {
    int N = 3, l = 0, I = 0;
    double delta1 = 0, delta2 = 0;
    double A = 0;  // separation constant
    double norm_constant_printed = 1;
    bool printed_jacobi_indices = false;
    std::function<double(double)> theta;  // phi in (0, pi)
};

// The Jacobi superscripts forced by the separated equation carry an extra
// (N-3)/2; the printed solution omits it (they agree at N=3). Default is the
// corrected pair, the printed pair stays available as an erratum probe.
AngularSolution build_angular(const ModelParams& params, int l, int I,
                              bool printed_jacobi_indices = false);

struct RadialSolution {
    int N = 3, n = 1, l = 0, I = 0;
    double delta1 = 0, delta2 = 0;
    double eps = 0;  // scale from the energy
    double E = 0;
    double norm_constant_printed = 1;
    std::function<double(double)> R;  // r in (0, inf)
};

RadialSolution build_radial(const ModelParams& params, int n, int l, int I);

struct ParabolicSolution {
    int N = 3, n1 = 0, n2 = 0, I = 0;
    double delta1 = 0, delta2 = 0;
    double eps = 0, E = 0;
    double v1 = 0, v2 = 0;  // separation constants, back-solved
    std::function<double(double)> f1, f2;
};

ParabolicSolution build_parabolic(const ModelParams& params, int n1, int n2, int I);

// Relative residual of the separated ODE at one interior point, via 4th-order
// central differences with h = 1e-3 * local scale (scaled by hscale for the
// convergence-order tests).
double angular_residual(const AngularSolution& sol, const ModelParams& params, double phi,
                        double hscale = 1.0);
double radial_residual(const RadialSolution& sol, const ModelParams& params, double r,
                       double hscale = 1.0);
double parabolic_residual(const ParabolicSolution& sol, const ModelParams& params, int which,
                          double t, double hscale = 1.0);

struct NormCheck {
    double norm_sq = 0;          // integral of the square of the built solution
    double printed_constant = 0;
    double computed_constant = 0;  // printed / sqrt(norm_sq)
    double ratio_printed_over_computed_sq = 0;
    bool converged = false;
};

NormCheck norm_check_angular(const AngularSolution& sol, const ModelParams& params);
NormCheck norm_check_radial(const RadialSolution& sol, const ModelParams& params);

// overlap of two normalized radial solutions (same l), r^{N-1} measure
double radial_overlap(const RadialSolution& a, const RadialSolution& b,
                      const ModelParams& params);

int node_count(const std::function<double(double)>& f, double lo, double hi, int samples);

// composite Gauss-Legendre quadrature; throws on non-convergence. abs_scale
// sets the reference magnitude for near-zero integrals (orthogonality).
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 int panels = 64, double abs_scale = 0.0);

}  // namespace kcn

#endif
