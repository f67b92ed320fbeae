#ifndef KCN_EXPR_TREE_HPP
#define KCN_EXPR_TREE_HPP

#include <complex>
#include <memory>

#include "kcn/canonical.hpp"

namespace kcn {

// Raw expression tree: +, -, *, variables, r, parameters and division by one
// of the tracked factors. normalize() turns it into a CanonicalExpr.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Add, Sub, Mul, Neg, Div, Const, Parameter, X, P, R };
    Kind kind;
    ExprPtr lhs, rhs;
    Rational value;   // Const
    Param param{};    // Parameter
    int index = 0;    // X/P (0-based)
};

ExprPtr ex_const(Rational q);
ExprPtr ex_param(Param p);
ExprPtr ex_x(int i);
ExprPtr ex_p(int i);
ExprPtr ex_r();
ExprPtr ex_add(ExprPtr a, ExprPtr b);
ExprPtr ex_sub(ExprPtr a, ExprPtr b);
ExprPtr ex_mul(ExprPtr a, ExprPtr b);
ExprPtr ex_neg(ExprPtr a);
// denominator must normalize to exactly r, r+xN or r-xN
ExprPtr ex_div(ExprPtr num, ExprPtr den);

// Canonicalize. Throws UnsupportedDenominator for divisions outside the class.
CanonicalExpr normalize(const ExprPtr& tree, int N);

// Rebuild a raw tree from a canonical expression (used to exercise
// normalize-idempotence and round-trip properties).
ExprPtr to_tree(const CanonicalExpr& e);

// Direct recursive evaluation of the raw tree, bypassing canonicalization.
std::complex<double> eval_tree(const ExprPtr& tree, int N, const EvalPoint& pt,
                               const ParamVals& params);

}  // namespace kcn

#endif
