#ifndef KCN_ORACLE_HPP
#define KCN_ORACLE_HPP

#include <vector>

#include "kcn/spectrum.hpp"

namespace kcn {

struct RadialProblem {
    ModelParams params;
    double A_eff = 0;       // angular separation constant
    double r_min = 0, r_max = 0;  // 0 = use defaults
    int M = 4000;           // interior grid points

    double default_r_min() const;
    double default_r_max(int levels) const;
};

struct EigenResult {
    std::vector<double> eigenvalues;       // Richardson-extrapolated
    std::vector<double> error_estimates;   // |E_h/2 - E_h| / 3
    std::vector<double> raw_coarse, raw_fine;
    int M = 0;
    double r_min = 0, r_max = 0;
    bool complete = true;  // false when fewer bound states than requested fit the box
};

// k lowest eigenvalues of the reduced radial problem (Dirichlet box,
// symmetric tridiagonal, Sturm bisection, Richardson over grid halving)
EigenResult solve_radial(const RadialProblem& problem, int k);

// k lowest separation-constant eigenvalues of the angular problem
EigenResult solve_angular(const ModelParams& params, int I, int k, int M = 4096);

struct SpectrumLine {
    int n = 1, I = 0, p = 0;
    double E_formula = 0;    // hyperspherical closed form
    double E_parabolic = 0;  // reconciled parabolic closed form
    double E_algebraic = 0;  // Set-1 reconciled
    double E_numeric = 0;    // radial oracle
    double badge = 0;        // max pairwise relative deviation
    double E_parabolic_printed = 0;  // populated when requested
};

std::vector<SpectrumLine> compare_spectrum(const ModelParams& params, int I, int levels,
                                           bool include_printed = false);

// lowest k eigenvalues of a symmetric tridiagonal matrix by Sturm bisection
std::vector<double> tridiag_lowest_eigenvalues(const std::vector<double>& diag,
                                               const std::vector<double>& off, int k);

}  // namespace kcn

#endif
