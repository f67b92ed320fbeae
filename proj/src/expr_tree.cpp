#include "kcn/expr_tree.hpp"

#include <cmath>

namespace kcn {

namespace {
ExprPtr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }
}  // namespace

ExprPtr ex_const(Rational q) {
    ExprNode n;
    n.kind = ExprNode::Kind::Const;
    n.value = std::move(q);
    return node(std::move(n));
}
ExprPtr ex_param(Param p) {
    ExprNode n;
    n.kind = ExprNode::Kind::Parameter;
    n.param = p;
    return node(std::move(n));
}
ExprPtr ex_x(int i) {
    ExprNode n;
    n.kind = ExprNode::Kind::X;
    n.index = i;
    return node(std::move(n));
}
ExprPtr ex_p(int i) {
    ExprNode n;
    n.kind = ExprNode::Kind::P;
    n.index = i;
    return node(std::move(n));
}
ExprPtr ex_r() {
    ExprNode n;
    n.kind = ExprNode::Kind::R;
    return node(std::move(n));
}
ExprPtr ex_add(ExprPtr a, ExprPtr b) {
    ExprNode n;
    n.kind = ExprNode::Kind::Add;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return node(std::move(n));
}
ExprPtr ex_sub(ExprPtr a, ExprPtr b) {
    ExprNode n;
    n.kind = ExprNode::Kind::Sub;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return node(std::move(n));
}
ExprPtr ex_mul(ExprPtr a, ExprPtr b) {
    ExprNode n;
    n.kind = ExprNode::Kind::Mul;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return node(std::move(n));
}
ExprPtr ex_neg(ExprPtr a) {
    ExprNode n;
    n.kind = ExprNode::Kind::Neg;
    n.lhs = std::move(a);
    return node(std::move(n));
}
ExprPtr ex_div(ExprPtr a, ExprPtr b) {
    ExprNode n;
    n.kind = ExprNode::Kind::Div;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return node(std::move(n));
}

CanonicalExpr normalize(const ExprPtr& t, int N) {
    using K = ExprNode::Kind;
    switch (t->kind) {
        case K::Const:
            return CanonicalExpr::rational(N, t->value);
        case K::Parameter:
            return CanonicalExpr::constant(N, ParamPoly::gen(t->param));
        case K::X:
            return CanonicalExpr::x(N, t->index);
        case K::P:
            return CanonicalExpr::p(N, t->index);
        case K::R:
            return CanonicalExpr::r(N);
        case K::Add:
            return normalize(t->lhs, N) + normalize(t->rhs, N);
        case K::Sub:
            return normalize(t->lhs, N) - normalize(t->rhs, N);
        case K::Mul:
            return normalize(t->lhs, N) * normalize(t->rhs, N);
        case K::Neg:
            return -normalize(t->lhs, N);
        case K::Div: {
            CanonicalExpr den = normalize(t->rhs, N);
            CanonicalExpr num = normalize(t->lhs, N);
            if (den == CanonicalExpr::r(N)) return num * CanonicalExpr::inv_r(N);
            if (den == CanonicalExpr::r(N) + CanonicalExpr::x(N, N - 1))
                return num * CanonicalExpr::inv_r_plus_xN(N);
            if (den == CanonicalExpr::r(N) - CanonicalExpr::x(N, N - 1))
                return num * CanonicalExpr::inv_r_minus_xN(N);
            throw UnsupportedDenominator();
        }
    }
    throw std::logic_error("normalize: bad node");
}

ExprPtr to_tree(const CanonicalExpr& e) {
    const int N = e.dim();
    ExprPtr acc;
    for (auto& t : e.num()) {
        ExprPtr term;
        for (auto& [pe, q] : t.coeff.terms()) {
            ExprPtr c = ex_const(q);
            static const Param gens[kNumParams] = {Param::I, Param::Hbar, Param::C0, Param::C1,
                                                   Param::C2};
            for (int k = 0; k < kNumParams; ++k)
                for (int rep = 0; rep < pe.e[k]; ++rep) c = ex_mul(c, ex_param(gens[k]));
            term = term ? ex_add(term, c) : c;
        }
        if (!term) continue;
        for (int i = 0; i < N; ++i) {
            for (int k = 0; k < t.mono.xexp(i); ++k) term = ex_mul(term, ex_x(i));
            for (int k = 0; k < t.mono.pexp(i); ++k) term = ex_mul(term, ex_p(i));
        }
        if (t.mono.rexp()) term = ex_mul(term, ex_r());
        acc = acc ? ex_add(acc, term) : term;
    }
    if (!acc) acc = ex_const(Rational(0));
    const auto& d = e.den();
    for (int k = 0; k < d.a; ++k) acc = ex_div(acc, ex_r());
    for (int k = 0; k < d.b; ++k) acc = ex_div(acc, ex_add(ex_r(), ex_x(N - 1)));
    for (int k = 0; k < d.c; ++k) acc = ex_div(acc, ex_sub(ex_r(), ex_x(N - 1)));
    return acc;
}

std::complex<double> eval_tree(const ExprPtr& t, int N, const EvalPoint& pt,
                               const ParamVals& params) {
    using K = ExprNode::Kind;
    switch (t->kind) {
        case K::Const:
            return {t->value.get_d(), 0.0};
        case K::Parameter:
            switch (t->param) {
                case Param::I:
                    return {0.0, 1.0};
                case Param::Hbar:
                    return {params.hbar, 0.0};
                case Param::C0:
                    return {params.c0, 0.0};
                case Param::C1:
                    return {params.c1, 0.0};
                case Param::C2:
                    return {params.c2, 0.0};
            }
            break;
        case K::X:
            return {pt.x.at(t->index).get_d(), 0.0};
        case K::P:
            return {pt.p.at(t->index).get_d(), 0.0};
        case K::R: {
            double s = 0;
            for (int i = 0; i < N; ++i) s += pt.x.at(i).get_d() * pt.x.at(i).get_d();
            return {std::sqrt(s), 0.0};
        }
        case K::Add:
            return eval_tree(t->lhs, N, pt, params) + eval_tree(t->rhs, N, pt, params);
        case K::Sub:
            return eval_tree(t->lhs, N, pt, params) - eval_tree(t->rhs, N, pt, params);
        case K::Mul:
            return eval_tree(t->lhs, N, pt, params) * eval_tree(t->rhs, N, pt, params);
        case K::Neg:
            return -eval_tree(t->lhs, N, pt, params);
        case K::Div: {
            auto d = eval_tree(t->rhs, N, pt, params);
            if (d == std::complex<double>{0.0, 0.0}) throw PoleError();
            return eval_tree(t->lhs, N, pt, params) / d;
        }
    }
    throw std::logic_error("eval_tree: bad node");
}

}  // namespace kcn
