#ifndef KCN_OBSERVABLES_HPP
#define KCN_OBSERVABLES_HPP

#include <map>
#include <optional>

#include "kcn/diff_op.hpp"

namespace kcn {

struct ModelParams {
    int N = 3;
    // couplings stay symbolic unless bound; spectrum/oracle work requires
    // bound values
    std::optional<double> c0, c1, c2, hbar;

    ParamVals bound() const {
        ParamVals v;
        v.c0 = c0.value_or(1.0);
        v.c1 = c1.value_or(0.0);
        v.c2 = c2.value_or(0.0);
        v.hbar = hbar.value_or(1.0);
        return v;
    }
    // c0 > 0 and hbar > 0 are hard requirements; negative c1/c2 are allowed
    // through to the radicand check, which rejects the fall-to-center regime
    void validate_numeric() const {
        if (N < 3) throw std::invalid_argument("ModelParams: N >= 3 required");
        ParamVals v = bound();
        if (v.c0 <= 0 || v.hbar <= 0)
            throw std::invalid_argument("ModelParams: need c0 > 0 and hbar > 0");
    }
};

struct ClassicalObservables {
    int N = 0;
    CanonicalExpr H, A, B, J2, MN, C_printed;
    std::map<std::pair<int, int>, CanonicalExpr> L;  // i < j, 0-based
};

struct QuantumObservables {
    int N = 0;
    DiffOp H, A, B, J2, MN, MN_second_form, C_printed, C_printed_xj;
    std::map<std::pair<int, int>, DiffOp> L;
};

ClassicalObservables build_classical(const ModelParams& params);
QuantumObservables build_quantum(const ModelParams& params);

// K assembled from the computed C = {A,B}. The printed form carries 8 J^2 A;
// the corrected variant has 8 J^2 H A, which is the combination the quadratic
// algebra actually centralizes.
CanonicalExpr casimir_classical(const ClassicalObservables& obs, const CanonicalExpr& C,
                                bool corrected_J2H_term);
CanonicalExpr classical_casimir_reduction(const ClassicalObservables& obs);

// Quantum K from C = [A,B]; {A,B^2} is expanded by composing in both orders.
// The printed A-coefficient carries (c1+c2) H^2; the corrected variant has H.
DiffOp casimir_quantum(const QuantumObservables& obs, const DiffOp& C, bool corrected_H_term,
                       const CancelToken* tok = nullptr);
DiffOp quantum_casimir_reduction(const QuantumObservables& obs);

}  // namespace kcn

#endif
