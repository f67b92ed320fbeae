#include <doctest.h>

#include "test_helpers.hpp"

using namespace kcn;
using namespace kcn_test;

namespace {
const int N = 3;
CanonicalExpr sum_sq(int n) {
    CanonicalExpr s = CanonicalExpr::zero(n);
    for (int i = 0; i < n; ++i) s += CanonicalExpr::x(n, i) * CanonicalExpr::x(n, i);
    return s;
}
}  // namespace

TEST_CASE("normalize: defining relation of r") {
    auto t = ex_sub(ex_mul(ex_r(), ex_r()),
                    ex_add(ex_add(ex_mul(ex_x(0), ex_x(0)), ex_mul(ex_x(1), ex_x(1))),
                           ex_mul(ex_x(2), ex_x(2))));
    CHECK(is_zero(normalize(t, N)));
}

TEST_CASE("normalize: r*r*r reduces to r * sum x^2") {
    auto e = normalize(ex_mul(ex_mul(ex_r(), ex_r()), ex_r()), N);
    CHECK(e == CanonicalExpr::r(N) * sum_sq(N));
    for (auto& term : e.num()) CHECK(term.mono.rexp() <= 1);
}

TEST_CASE("normalize: tracked factor cancels") {
    auto t = ex_mul(ex_div(ex_const(Rational(1)), ex_add(ex_r(), ex_x(N - 1))),
                    ex_add(ex_r(), ex_x(N - 1)));
    auto e = normalize(t, N);
    CHECK(e == CanonicalExpr::rational(N, Rational(1)));
    CHECK(e.den().b == 0);
}

TEST_CASE("normalize: unsupported denominator") {
    CHECK_THROWS_AS(normalize(ex_div(ex_r(), ex_x(0)), N), UnsupportedDenominator);
    CHECK_THROWS_AS(normalize(ex_div(ex_const(Rational(1)), ex_add(ex_r(), ex_x(0))), N),
                    UnsupportedDenominator);
}

TEST_CASE("is_zero examples") {
    CHECK(is_zero(normalize(
        ex_sub(ex_mul(ex_r(), ex_r()),
               ex_add(ex_add(ex_mul(ex_x(0), ex_x(0)), ex_mul(ex_x(1), ex_x(1))),
                      ex_mul(ex_x(2), ex_x(2)))),
        N)));
    // x1/r - x1*r/(sum x^2) == 0 after cross-multiplication
    CanonicalExpr lhs = CanonicalExpr::x(N, 0) * CanonicalExpr::inv_r(N);
    CanonicalExpr rhs = CanonicalExpr::x(N, 0) * CanonicalExpr::r(N);
    CHECK(is_zero(lhs * sum_sq(N) - rhs));
    CHECK(lhs * sum_sq(N) == rhs);
    CHECK(!is_zero(CanonicalExpr::x(N, 0)));
}

TEST_CASE("partial derivatives") {
    CHECK(partial_derivative(CanonicalExpr::r(N), Var::x(0)) ==
          CanonicalExpr::x(N, 0) * CanonicalExpr::inv_r(N));
    // d(1/(r+xN))/dxN = -(xN/r + 1)/(r+xN)^2
    CanonicalExpr lhs = partial_derivative(CanonicalExpr::inv_r_plus_xN(N), Var::x(N - 1));
    CanonicalExpr expected =
        -(CanonicalExpr::x(N, N - 1) * CanonicalExpr::inv_r(N) +
          CanonicalExpr::rational(N, Rational(1))) *
        CanonicalExpr::inv_r_plus_xN(N) * CanonicalExpr::inv_r_plus_xN(N);
    CHECK(lhs == expected);
    // d(p1^2)/dx1 = 0
    CHECK(is_zero(partial_derivative(CanonicalExpr::p(N, 0) * CanonicalExpr::p(N, 0), Var::x(0))));
    // d(p1^2)/dp1 = 2 p1
    CHECK(partial_derivative(CanonicalExpr::p(N, 0) * CanonicalExpr::p(N, 0), Var::p(0)) ==
          CanonicalExpr::p(N, 0).scaled(Rational(2)));
}

TEST_CASE("poisson bracket conventions") {
    auto x1 = CanonicalExpr::x(N, 0), p1 = CanonicalExpr::p(N, 0);
    CHECK(poisson_bracket(x1, p1, BracketConvention::Paper) ==
          CanonicalExpr::rational(N, Rational(-1)));
    CHECK(poisson_bracket(x1, p1, BracketConvention::Standard) ==
          CanonicalExpr::rational(N, Rational(1)));
    CHECK(is_zero(poisson_bracket(x1, CanonicalExpr::x(N, 1), BracketConvention::Paper)));
    // {L12, Hfree} = 0
    CanonicalExpr L12 = CanonicalExpr::x(N, 0) * CanonicalExpr::p(N, 1) -
                        CanonicalExpr::x(N, 1) * CanonicalExpr::p(N, 0);
    CanonicalExpr Hfree = CanonicalExpr::zero(N);
    for (int i = 0; i < N; ++i) Hfree += CanonicalExpr::p(N, i) * CanonicalExpr::p(N, i);
    Hfree = Hfree.scaled(Rational(1, 2));
    CHECK(is_zero(poisson_bracket(L12, Hfree, BracketConvention::Paper)));
}

TEST_CASE("eval_numeric examples") {
    ParamVals pv;
    EvalPoint pt{.x = {Rational(3), Rational(4), Rational(0)}, .p = {}};
    CHECK(eval_numeric(CanonicalExpr::r(N), pt, pv).real() == doctest::Approx(5.0));
    CHECK(eval_numeric(CanonicalExpr::x(N, 0) * CanonicalExpr::inv_r(N), pt, pv).real() ==
          doctest::Approx(0.6));
    EvalPoint pole{.x = {Rational(0), Rational(0), Rational(1)}, .p = {}};
    CHECK_THROWS_AS(eval_numeric(CanonicalExpr::inv_r_minus_xN(N), pole, pv), PoleError);
}

TEST_CASE("exact evaluation at Pythagorean points") {
    ParamValsExact pv;
    EvalPoint pt{.x = {Rational(3), Rational(4), Rational(0)}, .p = {}};
    auto g = eval_exact(CanonicalExpr::r(N), pt, pv);
    CHECK(g.re == Rational(5));
    EvalPoint bad{.x = {Rational(1), Rational(1), Rational(0)}, .p = {}};
    CHECK_THROWS(eval_exact(CanonicalExpr::r(N), bad, pv));
}

TEST_CASE("property: normalize is idempotent on randomized trees") {
    std::mt19937 rng(42);
    for (int it = 0; it < 1000; ++it) {
        auto tree = random_tree(N, rng, 4);
        CanonicalExpr e1 = normalize(tree, N);
        CanonicalExpr e2 = normalize(to_tree(e1), N);
        REQUIRE(e1 == e2);
    }
}

TEST_CASE("property: canonicalization preserves value") {
    std::mt19937 rng(43);
    ParamVals pv{.hbar = 0.7, .c0 = 1.3, .c1 = 0.4, .c2 = 0.9};
    int checked = 0;
    for (int it = 0; it < 400; ++it) {
        auto tree = random_tree(N, rng, 4);
        CanonicalExpr e = normalize(tree, N);
        EvalPoint pt = random_phase_point(N, rng);
        std::complex<double> direct, canon;
        try {
            direct = eval_tree(tree, N, pt, pv);
            canon = eval_numeric(e, pt, pv);
        } catch (const PoleError&) {
            continue;
        }
        double scale = std::max({1.0, std::abs(direct), std::abs(canon)});
        if (std::abs(direct) > 1e8) continue;  // ill-conditioned draw
        REQUIRE(std::abs(direct - canon) <= 1e-12 * scale);
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("property: integral domain (is_zero of products)") {
    std::mt19937 rng(44);
    for (int it = 0; it < 60; ++it) {
        CanonicalExpr f = random_low_degree(N, rng);
        CanonicalExpr g = random_low_degree(N, rng);
        CHECK(is_zero(f * g) == (is_zero(f) || is_zero(g)));
    }
}

TEST_CASE("property: nonzero canonical forms evaluate nonzero somewhere") {
    std::mt19937 rng(45);
    ParamValsExact pv{Rational(1), Rational(2), Rational(1, 3), Rational(1, 5)};
    for (int it = 0; it < 100; ++it) {
        CanonicalExpr e = normalize(random_tree(N, rng, 3), N);
        if (e.is_zero()) continue;
        bool found = false;
        for (int trial = 0; trial < 12 && !found; ++trial) {
            EvalPoint pt = random_phase_point(N, rng);
            try {
                if (!eval_exact(e, pt, pv).is_zero()) found = true;
            } catch (const PoleError&) {
            }
        }
        REQUIRE(found);
    }
}

TEST_CASE("property: poisson bracket antisymmetry and Jacobi") {
    std::mt19937 rng(46);
    for (int it = 0; it < 25; ++it) {
        CanonicalExpr f = random_low_degree(N, rng);
        CanonicalExpr g = random_low_degree(N, rng);
        CHECK(is_zero(poisson_bracket(f, g) + poisson_bracket(g, f)));
    }
    for (int it = 0; it < 12; ++it) {
        CanonicalExpr f = random_low_degree(N, rng, false);
        CanonicalExpr g = random_low_degree(N, rng, false);
        CanonicalExpr h = random_low_degree(N, rng);
        CanonicalExpr jac = poisson_bracket(f, poisson_bracket(g, h)) +
                            poisson_bracket(g, poisson_bracket(h, f)) +
                            poisson_bracket(h, poisson_bracket(f, g));
        REQUIRE(is_zero(jac));
    }
}

TEST_CASE("poisson bracket is interruptible") {
    CancelToken tok;
    tok.cancel();
    CanonicalExpr f = CanonicalExpr::x(N, 0) * CanonicalExpr::p(N, 0);
    CHECK_THROWS_AS(poisson_bracket(f, f, BracketConvention::Paper, &tok), OperationCancelled);
}

TEST_CASE("reflection symmetry helper") {
    // flips the sign once per x_k or p_k factor
    CanonicalExpr e = CanonicalExpr::x(N, 0) * CanonicalExpr::p(N, 1);
    CHECK(e.reflected(0) == -e);
    CHECK(e.reflected(1) == -e);
    CanonicalExpr even = CanonicalExpr::x(N, 1) * CanonicalExpr::p(N, 1);
    CHECK(even.reflected(1) == even);
    CHECK_THROWS(e.reflected(N - 1));
}

TEST_CASE("debug dump is deterministic and line-per-monomial") {
    CanonicalExpr e = CanonicalExpr::x(N, 0) * CanonicalExpr::p(N, 1) + CanonicalExpr::r(N);
    std::string d1 = e.dump(), d2 = e.dump();
    CHECK(d1 == d2);
    CHECK(d1.find("x1 p2") != std::string::npos);
}
