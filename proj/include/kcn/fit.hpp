#ifndef KCN_FIT_HPP
#define KCN_FIT_HPP

#include <optional>
#include <vector>

#include "kcn/diff_op.hpp"

namespace kcn {

// Result of expressing a target as sum_k lambda_k * basis_k with lambda_k
// polynomial in the parameters. When no exact combination exists, `success`
// is false and `residual_*` holds target - sum lambda_k basis_k for the
// partial solution of the consistent subsystem.
struct FitResult {
    bool success = false;
    std::vector<ParamPoly> coeffs;
    // unknowns that stayed free in an underdetermined system (set to zero)
    bool underdetermined = false;
    std::optional<CanonicalExpr> residual_expr;
    std::optional<DiffOp> residual_op;
};

FitResult fit_linear_combination(const CanonicalExpr& target,
                                 const std::vector<CanonicalExpr>& basis);
FitResult fit_linear_combination(const DiffOp& target, const std::vector<DiffOp>& basis);

}  // namespace kcn

#endif
