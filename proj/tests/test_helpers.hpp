#ifndef KCN_TEST_HELPERS_HPP
#define KCN_TEST_HELPERS_HPP

#include <random>

#include "kcn/expr_tree.hpp"

namespace kcn_test {

using namespace kcn;

inline Rational rand_rational(std::mt19937& rng, int lo = -6, int hi = 6, int dmax = 4) {
    std::uniform_int_distribution<int> den(1, dmax);
    int d = den(rng);
    std::uniform_int_distribution<int> num(lo * d, hi * d);
    int n = num(rng);
    if (n == 0) n = 1;
    return ratio(n, d);
}

// x-vector with rational r = sqrt(sum x_i^2), built from a chain of
// rational-parameter rotations
inline std::vector<Rational> pythagorean_point(int N, std::mt19937& rng) {
    std::uniform_int_distribution<int> pq(1, 5);
    std::uniform_int_distribution<int> qq(6, 11);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<Rational> x;
    x.push_back(rand_rational(rng, 1, 3));
    Rational r = abs(x[0]);
    for (int k = 1; k < N; ++k) {
        Rational t = ratio(pq(rng), qq(rng));
        Rational xk = r * 2 * t / (1 - t * t);
        r = r * (1 + t * t) / (1 - t * t);
        if (sign(rng)) xk = -xk;
        x.push_back(xk);
    }
    return x;
}

inline EvalPoint random_phase_point(int N, std::mt19937& rng) {
    EvalPoint pt;
    pt.x = pythagorean_point(N, rng);
    for (int i = 0; i < N; ++i) pt.p.push_back(rand_rational(rng));
    return pt;
}

// random expression tree over +,-,*, variables, r, parameters and the three
// allowed denominators
inline ExprPtr random_tree(int N, std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> kind(0, depth > 0 ? 6 : 3);
    switch (kind(rng)) {
        case 0: {
            std::uniform_int_distribution<int> v(0, N - 1);
            return ex_x(v(rng));
        }
        case 1: {
            std::uniform_int_distribution<int> v(0, N - 1);
            return ex_p(v(rng));
        }
        case 2:
            return ex_const(rand_rational(rng, -3, 3, 3));
        case 3: {
            std::uniform_int_distribution<int> g(0, 4);
            static const Param gens[5] = {Param::I, Param::Hbar, Param::C0, Param::C1, Param::C2};
            if (g(rng) == 0) return ex_r();
            return ex_param(gens[g(rng)]);
        }
        case 4:
            return ex_add(random_tree(N, rng, depth - 1), random_tree(N, rng, depth - 1));
        case 5:
            return ex_sub(random_tree(N, rng, depth - 1), random_tree(N, rng, depth - 1));
        default: {
            std::uniform_int_distribution<int> div(0, 5);
            int d = div(rng);
            if (d == 0)
                return ex_div(random_tree(N, rng, depth - 1), ex_r());
            if (d == 1)
                return ex_div(random_tree(N, rng, depth - 1), ex_add(ex_r(), ex_x(N - 1)));
            if (d == 2)
                return ex_div(random_tree(N, rng, depth - 1), ex_sub(ex_r(), ex_x(N - 1)));
            return ex_mul(random_tree(N, rng, depth - 1), random_tree(N, rng, depth - 1));
        }
    }
}

// random canonical expression that is polynomial in p of low degree; optional
// 1/r factor so brackets exercise the quotient rule
inline CanonicalExpr random_low_degree(int N, std::mt19937& rng, bool allow_inv_r = true) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> v(0, N - 1);
    std::uniform_int_distribution<int> coin(0, 3);
    CanonicalExpr e = CanonicalExpr::zero(N);
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        CanonicalExpr m = CanonicalExpr::rational(N, rand_rational(rng, -3, 3, 2));
        if (coin(rng) < 3) m *= CanonicalExpr::x(N, v(rng));
        if (coin(rng) < 3) m *= CanonicalExpr::p(N, v(rng));
        if (coin(rng) == 0) m *= CanonicalExpr::p(N, v(rng));
        if (coin(rng) == 0) m *= CanonicalExpr::r(N);
        if (allow_inv_r && coin(rng) == 0) m *= CanonicalExpr::inv_r(N);
        e += m;
    }
    return e;
}

}  // namespace kcn_test

#endif
