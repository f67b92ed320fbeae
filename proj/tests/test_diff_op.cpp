#include <doctest.h>

#include "kcn/diff_op.hpp"
#include "test_helpers.hpp"

using namespace kcn;
using namespace kcn_test;

namespace {
const int N = 3;

DiffOp ihbar_op(int n) {
    return DiffOp::from_coeff(
        CanonicalExpr::constant(n, ParamPoly::term(Rational(1), {{Param::I, 1}, {Param::Hbar, 1}})));
}

DiffOp random_order2(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> v(0, n - 1);
    std::uniform_int_distribution<int> ord(0, 2);
    DiffOp op = DiffOp::zero(n);
    for (int t = 0; t < 3; ++t) {
        MultiIndex a;
        int o = ord(rng);
        for (int k = 0; k < o; ++k) a.d[v(rng)] += 1;
        CanonicalExpr c = random_low_degree(n, rng, true);
        // strip p-content: coefficients are position-only
        CanonicalExpr pos = CanonicalExpr::zero(n);
        for (auto& term : c.num()) {
            if (term.mono.has_p()) continue;
            NumPoly single{term};
            pos += CanonicalExpr::make(n, c.den(), single);
        }
        op += compose(DiffOp::partial(n, a), DiffOp::from_coeff(pos));
    }
    return op;
}
}  // namespace

TEST_CASE("canonical quantization bracket") {
    auto c = commutator(DiffOp::coordinate(N, 0), DiffOp::momentum(N, 0));
    CHECK(c == ihbar_op(N));
    CHECK(is_zero(commutator(DiffOp::coordinate(N, 0), DiffOp::momentum(N, 1))));
}

TEST_CASE("compose: Leibniz examples") {
    MultiIndex d1;
    d1.d[0] = 1;
    // d1 o x1 = x1 d1 + 1
    auto got = compose(DiffOp::partial(N, d1), DiffOp::coordinate(N, 0));
    auto expect = compose(DiffOp::coordinate(N, 0), DiffOp::partial(N, d1)) + DiffOp::identity(N);
    CHECK(got == expect);
    // x1 o x2 has order 0 only
    auto xy = compose(DiffOp::coordinate(N, 0), DiffOp::coordinate(N, 1));
    CHECK(xy.order() == 0);
    // d1 o (1/r) = (1/r) d1 - x1/r^3
    auto inv = DiffOp::from_coeff(CanonicalExpr::inv_r(N));
    auto lhs = compose(DiffOp::partial(N, d1), inv);
    auto rhs = compose(inv, DiffOp::partial(N, d1)) +
               DiffOp::from_coeff(-CanonicalExpr::x(N, 0) * CanonicalExpr::inv_r(N) *
                                  CanonicalExpr::inv_r(N) * CanonicalExpr::inv_r(N));
    CHECK(lhs == rhs);
}

TEST_CASE("compose is associative") {
    std::mt19937 rng(7);
    for (int it = 0; it < 6; ++it) {
        DiffOp P = random_order2(N, rng);
        DiffOp Q = random_order2(N, rng);
        DiffOp R = random_order2(N, rng);
        CHECK(compose(compose(P, Q), R) == compose(P, compose(Q, R)));
    }
}

TEST_CASE("commutator: angular momentum so(3) pattern") {
    auto L = [&](int i, int j) {
        return compose(DiffOp::coordinate(N, i), DiffOp::momentum(N, j)) -
               compose(DiffOp::coordinate(N, j), DiffOp::momentum(N, i));
    };
    CHECK(is_zero(commutator(L(0, 1), L(0, 1))));
    // [L12, L23] follows the printed delta pattern: i hbar (d_22 L13 terms)
    DiffOp lhs = commutator(L(0, 1), L(1, 2));
    DiffOp rhs = compose(ihbar_op(N), -L(0, 2));
    CHECK(lhs == rhs);
}

TEST_CASE("central-system so(N+1) fixture relations") {
    // with H = p^2/2 - c0/r: [M_i, M_j] = -2 i hbar H L_ij and
    // [M_k, L_ij] = i hbar (d_ik M_j - d_jk M_i)
    for (int n : {3, 4}) {
        auto X = [&](int i) { return DiffOp::coordinate(n, i); };
        auto P = [&](int i) { return DiffOp::momentum(n, i); };
        auto L = [&](int i, int j) { return compose(X(i), P(j)) - compose(X(j), P(i)); };
        CanonicalExpr c0 = CanonicalExpr::constant(n, ParamPoly::gen(Param::C0));
        DiffOp p2 = DiffOp::zero(n);
        for (int i = 0; i < n; ++i) p2 += compose(P(i), P(i));
        DiffOp H = p2.scaled(Rational(1, 2)) +
                   DiffOp::from_coeff(-c0 * CanonicalExpr::inv_r(n));
        auto M = [&](int j) {
            DiffOp acc = DiffOp::zero(n);
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                acc += compose(L(j, i), P(i)) + compose(P(i), L(j, i));
            }
            return acc.scaled(Rational(1, 2)) +
                   DiffOp::from_coeff(-c0 * CanonicalExpr::x(n, j) * CanonicalExpr::inv_r(n));
        };
        CHECK(is_zero(commutator(H, M(0))));
        DiffOp lhs = commutator(M(0), M(1));
        DiffOp rhs = compose(ihbar_op(n).scaled(Rational(-2)), compose(H, L(0, 1)));
        CHECK(lhs == rhs);
        // vector-operator rule: [L_ij, M_k] = i hbar (d_ik M_j - d_jk M_i);
        // the reversed order flips the sign
        DiffOp lhs2 = commutator(L(0, 1), M(0));
        CHECK(lhs2 == compose(ihbar_op(n), M(1)));
    }
}

TEST_CASE("property: commutator Jacobi identity on random order<=2 ops") {
    std::mt19937 rng(11);
    for (int it = 0; it < 8; ++it) {
        DiffOp P = random_order2(N, rng);
        DiffOp Q = random_order2(N, rng);
        DiffOp R = random_order2(N, rng);
        DiffOp jac = commutator(P, commutator(Q, R)) + commutator(Q, commutator(R, P)) +
                     commutator(R, commutator(P, Q));
        REQUIRE(is_zero(jac));
    }
}

TEST_CASE("adjoint: formal transpose") {
    // (x1)^T = x1, (p1)^T = p1 under the i-conjugating transpose
    CHECK(DiffOp::coordinate(N, 0).adjoint() == DiffOp::coordinate(N, 0));
    CHECK(DiffOp::momentum(N, 0).adjoint() == DiffOp::momentum(N, 0));
    // (PQ)^T = Q^T P^T
    std::mt19937 rng(12);
    DiffOp P = random_order2(N, rng);
    DiffOp Q = random_order2(N, rng);
    CHECK(compose(P, Q).adjoint() == compose(Q.adjoint(), P.adjoint()));
}

TEST_CASE("coefficients must be position-only") {
    CHECK_THROWS(DiffOp::from_coeff(CanonicalExpr::p(N, 0)));
}

TEST_CASE("compose honors the cancellation token") {
    CancelToken tok;
    tok.cancel();
    std::mt19937 rng(13);
    DiffOp P = random_order2(N, rng);
    CHECK_THROWS_AS(compose(P, P, &tok), OperationCancelled);
}

TEST_CASE("apply operator to expression") {
    MultiIndex d1;
    d1.d[0] = 1;
    auto e = DiffOp::partial(N, d1).apply(CanonicalExpr::r(N));
    CHECK(e == CanonicalExpr::x(N, 0) * CanonicalExpr::inv_r(N));
}
