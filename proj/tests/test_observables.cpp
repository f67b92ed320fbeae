#include <doctest.h>

#include "kcn/observables.hpp"
#include "test_helpers.hpp"

using namespace kcn;
using namespace kcn_test;

namespace {

// quantize a classical phase-space polynomial term by term with x-factors to
// the left of the momentum product; any ordering discrepancy against the
// operator builders must then be explicitly O(hbar)
DiffOp quantize_x_left(const CanonicalExpr& e) {
    const int n = e.dim();
    DiffOp acc = DiffOp::zero(n);
    for (auto& t : e.num()) {
        VarMono pos = t.mono;
        DiffOp piece(n);
        std::vector<DiffOp> moms;
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < pos.pexp(i); ++k) moms.push_back(DiffOp::momentum(n, i));
            pos.set_p(i, 0);
        }
        NumPoly single{{pos, t.coeff}};
        DiffOp cur = DiffOp::from_coeff(CanonicalExpr::make(n, e.den(), single));
        for (auto& m : moms) cur = compose(cur, m);
        acc += cur;
    }
    return acc;
}

bool coeffs_all_carry_hbar(const DiffOp& op) {
    for (auto& t : op.terms())
        for (auto& pt : t.coeff.num())
            for (auto& [pe, q] : pt.coeff.terms())
                if (pe.e[static_cast<int>(Param::Hbar)] == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("classical builder: coupling-free limits") {
    ModelParams p{.N = 3};
    auto obs = build_classical(p);
    // with c1 = c2 = 0, A reduces to the total squared angular momentum
    CanonicalExpr sumL2 = CanonicalExpr::zero(3);
    for (auto& [ij, L] : obs.L) sumL2 += L * L;
    ParamValsExact off{Rational(1), Rational(1), Rational(0), Rational(0)};
    std::mt19937 rng(3);
    for (int it = 0; it < 5; ++it) {
        EvalPoint pt = random_phase_point(3, rng);
        CHECK(eval_exact(obs.A - sumL2, pt, off).is_zero());
    }
    // J^2 = L12^2 at N=3
    CHECK(obs.J2 == obs.L.at({0, 1}) * obs.L.at({0, 1}));
}

TEST_CASE("classical H value at a Pythagorean point") {
    ModelParams p{.N = 3};
    auto obs = build_classical(p);
    EvalPoint pt{.x = {Rational(3), Rational(4), Rational(0)},
                 .p = {Rational(0), Rational(0), Rational(0)}};
    ParamVals vals{.hbar = 1, .c0 = 1, .c1 = 0, .c2 = 0};
    CHECK(eval_numeric(obs.H, pt, vals).real() == doctest::Approx(-0.2));
}

TEST_CASE("L antisymmetry as built") {
    ModelParams p{.N = 4};
    auto obs = build_classical(p);
    for (auto& [ij, L] : obs.L) {
        CanonicalExpr swapped = CanonicalExpr::x(4, ij.second) * CanonicalExpr::p(4, ij.first) -
                                CanonicalExpr::x(4, ij.first) * CanonicalExpr::p(4, ij.second);
        CHECK(swapped == -L);
    }
}

TEST_CASE("quantum builder: structure checks") {
    ModelParams p{.N = 3};
    auto obs = build_quantum(p);
    // [x1, H] only has derivative terms of order <= 1
    DiffOp c = commutator(DiffOp::coordinate(3, 0), obs.H);
    CHECK(c.order() <= 1);
    CHECK(!c.is_zero());
    // with c1 = c2 = 0 the quantum A is exactly sum L^2: the coupling terms
    // carry c1/c2 factors, so substituting zero must kill them
    DiffOp sumL2 = DiffOp::zero(3);
    for (auto& [ij, L] : obs.L) sumL2 += compose(L, L);
    DiffOp diff = obs.A - sumL2;
    for (auto& t : diff.terms())
        for (auto& pt : t.coeff.num())
            for (auto& [pe, q] : pt.coeff.terms())
                CHECK(pe.e[static_cast<int>(Param::C1)] + pe.e[static_cast<int>(Param::C2)] > 0);
}

TEST_CASE("quantum J2 commutes with every L_kl at N=4") {
    ModelParams p{.N = 4};
    auto obs = build_quantum(p);
    for (auto& [ij, L] : obs.L) {
        if (ij.first >= 3 || ij.second >= 3) continue;  // so(3) generators only
        CHECK(is_zero(commutator(obs.J2, L)));
    }
}

TEST_CASE("classical and quantum builders agree up to explicit hbar terms") {
    ModelParams p{.N = 3};
    auto cl = build_classical(p);
    auto qu = build_quantum(p);
    CHECK(coeffs_all_carry_hbar(quantize_x_left(cl.A) - qu.A));
    CHECK(coeffs_all_carry_hbar(quantize_x_left(cl.H) - qu.H));
    CHECK(coeffs_all_carry_hbar(quantize_x_left(cl.B) - qu.B));
}

TEST_CASE("reflection invariance of A, B, J2 at N=3,4") {
    for (int n : {3, 4}) {
        ModelParams p{.N = n};
        auto obs = build_classical(p);
        for (int k = 0; k < n - 1; ++k) {
            CHECK(obs.A.reflected(k) == obs.A);
            CHECK(obs.B.reflected(k) == obs.B);
            CHECK(obs.J2.reflected(k) == obs.J2);
        }
    }
}

TEST_CASE("hermiticity under the formal transpose at N=3") {
    ModelParams p{.N = 3};
    auto obs = build_quantum(p);
    CHECK(obs.H.adjoint() == obs.H);
    CHECK(obs.A.adjoint() == obs.A);
    CHECK(obs.B.adjoint() == obs.B);
}

TEST_CASE("printed Runge-Lenz forms differ (erratum)") {
    ModelParams p{.N = 3};
    auto obs = build_quantum(p);
    CHECK(obs.MN != obs.MN_second_form);
}
