#ifndef KCN_SPECTRUM_HPP
#define KCN_SPECTRUM_HPP

#include <vector>

#include "kcn/observables.hpp"

namespace kcn {

struct FallToCenter : std::domain_error {
    FallToCenter() : std::domain_error("effective coupling below the fall-to-center bound") {}
};

enum class SpectrumConvention { Reconciled, AsPrinted };

struct QuantumNumbersSpherical {
    int n = 1, l = 0, I = 0;
    bool valid() const { return I >= 0 && l >= I && n >= l + 1; }
};

struct QuantumNumbersParabolic {
    int n1 = 0, n2 = 0, I = 0;
    int principal() const { return n1 + n2 + I + 1; }
};

struct DeltaPair {
    double d1 = 0, d2 = 0;
};

// delta_i = sqrt((I+(N-3)/2)^2 + 4 c_i / hbar^2) - (N-3)/2 - I, evaluated
// in a cancellation-free form
DeltaPair delta_pair(const ModelParams& params, int I);

double separation_constant_A(const ModelParams& params, int l, int I);

double energy_spherical(const ModelParams& params, int n, int I);
double energy_parabolic(const ModelParams& params, int n1, int n2, int I,
                        SpectrumConvention conv);

struct MPair {
    double m1 = 0, m2 = 0;
};
// reconciled: m_i = delta_i + I + (N-3)/2 (positive). as-printed: the radical
// version hbar^2 m^2 = 16 c + (4 I(I+N-3) + (N-3)^2) hbar^2, which is twice
// the reconciled value.
MPair m_pair(const ModelParams& params, int I, SpectrumConvention conv);

struct MPrintedVariants {
    double m1_radical, m2_radical;  // from hbar^2 m^2 = 16 c + ...
    double m1_linear, m2_linear;    // from m = (3 - 2I - N - 2 delta)/2
};
MPrintedVariants m_pair_printed_variants(const ModelParams& params, int I);

enum class PhiForm { Factorized, Expanded };

// structure function at (x, u, E); E < 0 required
double phi(double x, double u, double E, const ModelParams& params, int I, PhiForm form,
           SpectrumConvention conv = SpectrumConvention::Reconciled);

struct AlgebraicSolution {
    int set_id = 1;
    int eps1 = 1, eps2 = 1;
    int p = 0;
    double u = 0, E = 0, m1 = 0, m2 = 0;
    SpectrumConvention convention = SpectrumConvention::Reconciled;
    bool constraints_ok = false;  // Phi(0) and Phi(p+1) vanish to 1e-12
    bool unitary = false;         // interior positivity holds
    double phi0_rel = 0, phip1_rel = 0;
};

AlgebraicSolution solve_constraint_set(const ModelParams& params, int I, int p, int eps1,
                                       int eps2, int set_id, SpectrumConvention conv);

struct RepresentationReport {
    int p = 0;
    bool phi0_zero = false, phip1_zero = false, positive_interior = false;
    std::vector<double> interior_values;
    int dimension = 1;   // p+1
    int degeneracy = 1;  // p+1
};
RepresentationReport representation_check(const AlgebraicSolution& sol,
                                          const ModelParams& params, int I);

inline int degeneracy(int p) { return p + 1; }

}  // namespace kcn

#endif
