#include <doctest.h>

#include "kcn/param_poly.hpp"

using namespace kcn;

TEST_CASE("imaginary unit reduction") {
    ParamPoly i = ParamPoly::gen(Param::I);
    CHECK(i * i == ParamPoly::constant(Rational(-1)));
    CHECK(i * i * i * i == ParamPoly::one());
    CHECK(ParamPoly::gen(Param::I, 2) == ParamPoly::constant(Rational(-1)));
    CHECK(ParamPoly::gen(Param::I, 3) == (-i));
}

TEST_CASE("arithmetic and canonical form") {
    ParamPoly h = ParamPoly::gen(Param::Hbar);
    ParamPoly c0 = ParamPoly::gen(Param::C0);
    ParamPoly a = h * c0 + c0 * h;  // same monomial merges
    CHECK(a == (h * c0).scaled(Rational(2)));
    CHECK((a - a).is_zero());
    ParamPoly b = (h + c0) * (h - c0);
    CHECK(b == h * h - c0 * c0);
    CHECK(ParamPoly::term(Rational(3, 2), {{Param::Hbar, 2}, {Param::C1, 1}}).degree() == 3);
}

TEST_CASE("conjugation flips odd i-terms") {
    ParamPoly z = ParamPoly::gen(Param::I) * ParamPoly::gen(Param::Hbar) + ParamPoly::one();
    ParamPoly zc = z.conj();
    CHECK(z + zc == ParamPoly::constant(Rational(2)));
}

TEST_CASE("numeric and exact evaluation") {
    ParamPoly e = ParamPoly::term(Rational(2), {{Param::I, 1}, {Param::Hbar, 1}}) +
                  ParamPoly::gen(Param::C1);
    ParamVals v{.hbar = 2.0, .c0 = 1.0, .c1 = 0.5, .c2 = 0.0};
    auto z = e.eval(v);
    CHECK(z.real() == doctest::Approx(0.5));
    CHECK(z.imag() == doctest::Approx(4.0));
    ParamValsExact ve{Rational(2), Rational(1), Rational(1, 2), Rational(0)};
    auto g = e.eval_exact(ve);
    CHECK(g.re == Rational(1, 2));
    CHECK(g.im == Rational(4));
}

TEST_CASE("rational square root") {
    Rational root;
    CHECK(rational_sqrt(Rational(25, 4), root));
    CHECK(root == Rational(5, 2));
    CHECK(!rational_sqrt(Rational(2), root));
    CHECK(!rational_sqrt(Rational(-1), root));
}
