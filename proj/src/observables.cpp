#include "kcn/observables.hpp"

namespace kcn {

namespace {

ParamPoly pp(Param g) { return ParamPoly::gen(g); }
ParamPoly ppq(const Rational& q) { return ParamPoly::constant(q); }

}  // namespace

ClassicalObservables build_classical(const ModelParams& params) {
    const int N = params.N;
    if (N < 3) throw std::invalid_argument("build_classical: N >= 3");
    if (N > kMaxDim) throw std::invalid_argument("build_classical: N too large");
    ClassicalObservables o;
    o.N = N;
    auto X = [&](int i) { return CanonicalExpr::x(N, i); };
    auto P = [&](int i) { return CanonicalExpr::p(N, i); };
    CanonicalExpr r = CanonicalExpr::r(N);
    CanonicalExpr inv_r = CanonicalExpr::inv_r(N);
    CanonicalExpr inv_plus = CanonicalExpr::inv_r_plus_xN(N);
    CanonicalExpr inv_minus = CanonicalExpr::inv_r_minus_xN(N);
    CanonicalExpr c0 = CanonicalExpr::constant(N, pp(Param::C0));
    CanonicalExpr c1 = CanonicalExpr::constant(N, pp(Param::C1));
    CanonicalExpr c2 = CanonicalExpr::constant(N, pp(Param::C2));

    CanonicalExpr p2 = CanonicalExpr::zero(N);
    for (int i = 0; i < N; ++i) p2 += P(i) * P(i);
    o.H = p2.scaled(Rational(1, 2)) - c0 * inv_r + c1 * inv_r * inv_plus +
          c2 * inv_r * inv_minus;

    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) o.L[{i, j}] = X(i) * P(j) - X(j) * P(i);

    CanonicalExpr sumL2 = CanonicalExpr::zero(N);
    for (auto& [ij, L] : o.L) sumL2 += L * L;
    o.A = sumL2 + (r * c1 * inv_plus + r * c2 * inv_minus).scaled(Rational(2));

    CanonicalExpr xdotp = CanonicalExpr::zero(N);
    for (int i = 0; i < N; ++i) xdotp += X(i) * P(i);
    o.MN = X(N - 1) * p2 - xdotp * P(N - 1) - c0 * X(N - 1) * inv_r;
    o.B = -o.MN + c1 * (r - X(N - 1)) * inv_r * inv_plus -
          c2 * (r + X(N - 1)) * inv_r * inv_minus;

    o.J2 = CanonicalExpr::zero(N);
    for (int i = 0; i < N - 1; ++i)
        for (int j = i + 1; j < N - 1; ++j) o.J2 += o.L[{i, j}] * o.L[{i, j}];

    // printed closed form of C = {A,B}
    CanonicalExpr C = CanonicalExpr::zero(N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            C -= (X(i) * X(j) * P(i) * P(j) * P(N - 1)).scaled(Rational(2));
    for (int i = 0; i < N; ++i) {
        C += (r * r * P(i) * P(i) * P(N - 1)).scaled(Rational(2));
        C += (c0 * inv_r * X(i) * X(N - 1) * P(i)).scaled(Rational(2));
        C -= (c1 * inv_r * X(i) * P(i)).scaled(Rational(2));
        C += (c2 * inv_r * X(i) * P(i)).scaled(Rational(2));
    }
    C -= (c0 * r * P(N - 1)).scaled(Rational(2));
    C += (c1 * r * inv_plus * P(N - 1)).scaled(Rational(4));
    C += (c2 * r * inv_minus * P(N - 1)).scaled(Rational(4));
    o.C_printed = C;
    return o;
}

QuantumObservables build_quantum(const ModelParams& params) {
    const int N = params.N;
    if (N < 3) throw std::invalid_argument("build_quantum: N >= 3");
    if (N > kMaxDim) throw std::invalid_argument("build_quantum: N too large");
    QuantumObservables o;
    o.N = N;
    auto X = [&](int i) { return DiffOp::coordinate(N, i); };
    auto P = [&](int i) { return DiffOp::momentum(N, i); };
    auto coeff = [&](const CanonicalExpr& e) { return DiffOp::from_coeff(e); };
    CanonicalExpr r = CanonicalExpr::r(N);
    CanonicalExpr xN = CanonicalExpr::x(N, N - 1);
    CanonicalExpr inv_r = CanonicalExpr::inv_r(N);
    CanonicalExpr inv_plus = CanonicalExpr::inv_r_plus_xN(N);
    CanonicalExpr inv_minus = CanonicalExpr::inv_r_minus_xN(N);
    CanonicalExpr c0 = CanonicalExpr::constant(N, pp(Param::C0));
    CanonicalExpr c1 = CanonicalExpr::constant(N, pp(Param::C1));
    CanonicalExpr c2 = CanonicalExpr::constant(N, pp(Param::C2));
    ParamPoly ihbar = ParamPoly::term(Rational(1), {{Param::I, 1}, {Param::Hbar, 1}});

    DiffOp p2 = DiffOp::zero(N);
    for (int i = 0; i < N; ++i) p2 += compose(P(i), P(i));
    DiffOp Hc = p2.scaled(Rational(1, 2)) + coeff(-c0 * inv_r);
    o.H = Hc + coeff(c1 * inv_r * inv_plus + c2 * inv_r * inv_minus);

    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            o.L[{i, j}] = compose(X(i), P(j)) - compose(X(j), P(i));
    auto Lgen = [&](int i, int j) {
        // L_ij for arbitrary order, L_ji = -L_ij
        if (i < j) return o.L[{i, j}];
        return -o.L[{j, i}];
    };

    DiffOp sumL2 = DiffOp::zero(N);
    for (auto& [ij, L] : o.L) sumL2 += compose(L, L);
    o.A = sumL2 + coeff((r * c1 * inv_plus + r * c2 * inv_minus).scaled(Rational(2)));

    // Runge-Lenz N-component, first printed form:
    //   M_N = 1/2 sum_i (L_Ni p_i + p_i L_Ni) - c0 xN / r
    DiffOp m1 = DiffOp::zero(N);
    for (int i = 0; i < N; ++i) {
        if (i == N - 1) continue;
        m1 += compose(Lgen(N - 1, i), P(i)) + compose(P(i), Lgen(N - 1, i));
    }
    o.MN = m1.scaled(Rational(1, 2)) + coeff(-c0 * xN * inv_r);

    // second printed form, verbatim
    DiffOp m2 = -compose(coeff(xN), p2.scaled(Rational(1, 2)) + Hc);
    for (int i = 0; i < N; ++i) m2 += compose(X(i), P(i), P(N - 1)).scaled(Rational(1));
    m2 += P(N - 1).scaled(-ihbar.scaled(ratio(N - 1, 2)));
    m2 += coeff(-c0 * xN * inv_r);
    o.MN_second_form = m2;

    o.B = -o.MN + coeff(c1 * (r - xN) * inv_r * inv_plus - c2 * (r + xN) * inv_r * inv_minus);

    o.J2 = DiffOp::zero(N);
    for (int i = 0; i < N - 1; ++i)
        for (int j = i + 1; j < N - 1; ++j) o.J2 += compose(o.L[{i, j}], o.L[{i, j}]);

    // printed quantum C: as printed the first double sum has x_i x_N; the
    // x_i x_j variant restores the classical-limit pattern
    auto build_C = [&](bool xj_variant) {
        DiffOp C = DiffOp::zero(N);
        ParamPoly h2 = ParamPoly::gen(Param::Hbar, 2);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                CanonicalExpr xx = xj_variant ? CanonicalExpr::x(N, i) * CanonicalExpr::x(N, j)
                                              : CanonicalExpr::x(N, i) * xN;
                C += compose(coeff(xx), P(i), P(j), P(N - 1)).scaled(ihbar.scaled(Rational(-2)));
            }
        for (int i = 0; i < N; ++i) {
            C += compose(coeff(r * r), P(i), P(i), P(N - 1)).scaled(ihbar.scaled(Rational(2)));
            C += compose(coeff(xN), P(i), P(i)).scaled(h2.scaled(Rational(2)));
            C += compose(X(i), P(i), P(N - 1)).scaled(h2.scaled(Rational(-2 * N)));
            C += compose(coeff(CanonicalExpr::x(N, i) * xN * inv_r), P(i))
                     .scaled(ihbar.scaled(Rational(2)) * pp(Param::C0));
            C += compose(coeff(CanonicalExpr::x(N, i) * inv_r), P(i))
                     .scaled(ihbar.scaled(Rational(-2)) * pp(Param::C1));
            C += compose(coeff(CanonicalExpr::x(N, i) * inv_r), P(i))
                     .scaled(ihbar.scaled(Rational(2)) * pp(Param::C2));
        }
        C += P(N - 1).scaled(ParamPoly::term(Rational(1, 2) * Rational(N - 1) * Rational(N - 1),
                                             {{Param::I, 1}, {Param::Hbar, 3}}));
        C += compose(coeff(r), P(N - 1)).scaled(ihbar.scaled(Rational(-2)) * pp(Param::C0));
        C += compose(coeff(r * inv_plus), P(N - 1)).scaled(ihbar.scaled(Rational(4)) * pp(Param::C1));
        C += compose(coeff(r * inv_minus), P(N - 1)).scaled(ihbar.scaled(Rational(4)) * pp(Param::C2));
        C += coeff((c0 * xN * inv_r).scaled(h2.scaled(Rational(N - 1))));
        CanonicalExpr nplus = (r.scaled(Rational(N + 1)) + xN.scaled(Rational(N - 3)));
        CanonicalExpr nminus = (r.scaled(Rational(N + 1)) - xN.scaled(Rational(N - 3)));
        C += coeff(-(nplus * inv_r * inv_plus).scaled(h2) * c1);
        C += coeff((nminus * inv_r * inv_minus).scaled(h2) * c2);
        return C;
    };
    o.C_printed = build_C(false);
    o.C_printed_xj = build_C(true);
    return o;
}

CanonicalExpr casimir_classical(const ClassicalObservables& obs, const CanonicalExpr& C,
                                bool corrected_J2H_term) {
    const int N = obs.N;
    CanonicalExpr c0 = CanonicalExpr::constant(N, pp(Param::C0));
    CanonicalExpr c1 = CanonicalExpr::constant(N, pp(Param::C1));
    CanonicalExpr c2 = CanonicalExpr::constant(N, pp(Param::C2));
    CanonicalExpr j2term = corrected_J2H_term ? obs.J2 * obs.H : obs.J2;
    return C * C + (obs.A * obs.B * obs.B).scaled(Rational(4)) -
           ((c1 - c2) * c0 * obs.B).scaled(Rational(8)) -
           (obs.H * obs.A * obs.A).scaled(Rational(8)) +
           (((c1 + c2) * obs.H).scaled(Rational(16)) + j2term.scaled(Rational(8)) -
            (c0 * c0).scaled(Rational(4))) *
               obs.A;
}

CanonicalExpr classical_casimir_reduction(const ClassicalObservables& obs) {
    const int N = obs.N;
    CanonicalExpr c0 = CanonicalExpr::constant(N, pp(Param::C0));
    CanonicalExpr c1 = CanonicalExpr::constant(N, pp(Param::C1));
    CanonicalExpr c2 = CanonicalExpr::constant(N, pp(Param::C2));
    CanonicalExpr d = c1 - c2;
    return (d * d * obs.H).scaled(Rational(8)) - ((c1 + c2) * c0 * c0).scaled(Rational(8)) -
           (c0 * c0 * obs.J2).scaled(Rational(4));
}

DiffOp casimir_quantum(const QuantumObservables& obs, const DiffOp& C, bool corrected_H_term,
                       const CancelToken* tok) {
    const int N = obs.N;
    ParamPoly h2 = ParamPoly::gen(Param::Hbar, 2);
    ParamPoly h4 = ParamPoly::gen(Param::Hbar, 4);
    ParamPoly c0 = pp(Param::C0), c1 = pp(Param::C1), c2 = pp(Param::C2);

    DiffOp B2 = compose(obs.B, obs.B, tok);
    DiffOp K = compose(C, C, tok);
    K += anticommutator(obs.A, B2, tok).scaled(-h2.scaled(Rational(2)));
    K += B2.scaled(h4.scaled(Rational(4 - (N - 1) * (N - 3))));
    K += obs.B.scaled((c1 - c2) * c0 * h2.scaled(Rational(8)));
    K += compose(obs.H, obs.A, obs.A).scaled(h2.scaled(Rational(8)));

    DiffOp zA = compose(obs.J2, obs.H, obs.A).scaled(-h2.scaled(Rational(4)));
    zA += compose(obs.H, obs.A).scaled(h4.scaled(Rational((N - 1) * (N - 1))));
    if (corrected_H_term)
        zA += compose(obs.H, obs.A).scaled(-h2.scaled(Rational(8)) * (c1 + c2));
    else
        zA += compose(obs.H, obs.H, obs.A).scaled(-h2.scaled(Rational(8)) * (c1 + c2));
    zA += obs.A.scaled(h2.scaled(Rational(2)) * c0 * c0);
    K += zA.scaled(Rational(2));
    return K;
}

DiffOp quantum_casimir_reduction(const QuantumObservables& obs) {
    const int N = obs.N;
    ParamPoly h2 = ParamPoly::gen(Param::Hbar, 2);
    ParamPoly h4 = ParamPoly::gen(Param::Hbar, 4);
    ParamPoly h6 = ParamPoly::gen(Param::Hbar, 6);
    ParamPoly c0 = pp(Param::C0), c1 = pp(Param::C1), c2 = pp(Param::C2);
    ParamPoly d = c1 - c2, s = c1 + c2;
    DiffOp out = compose(obs.H, obs.J2).scaled(h4.scaled(Rational(2 * (N - 3) * (N - 1))));
    out += obs.H.scaled(-h2.scaled(Rational(8)) * d * d);
    out += obs.H.scaled(h4.scaled(Rational(4 * (N - 3) * (N - 1))) * s);
    out += obs.H.scaled(-h6.scaled(Rational((N - 3) * (N - 1) * (N - 1))));
    out += obs.J2.scaled(h2.scaled(Rational(4)) * c0 * c0);
    out += DiffOp::identity(obs.N).scaled(h2.scaled(Rational(8)) * s * c0 * c0 -
                                          h4.scaled(Rational(2 * (N - 3))) * c0 * c0);
    return out;
}

}  // namespace kcn
