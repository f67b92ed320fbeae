#include <doctest.h>

#include <cmath>
#include <random>

#include "kcn/special.hpp"

using namespace kcn;

namespace {

// independent oracle: hypergeometric representation of Jacobi polynomials,
// P_n^(a,b)(x) = binom(n+a, n) 2F1(-n, n+a+b+1; a+1; (1-x)/2), finite sum in
// long double so the oracle's own rounding stays below the 1e-12 gate
double jacobi_via_2f1(int n, double a, double b, double x) {
    double pre = 1.0;
    for (int k = 1; k <= n; ++k) pre *= (a + k) / k;  // (a+1)_n / n!
    double z = 0.5 * (1.0 - x);
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < n; ++k) {
        term *= (-n + k) * (n + a + b + 1 + k) / ((a + 1 + k) * (k + 1.0)) * z;
        sum += term;
    }
    return pre * sum;
}

// brute-force series for 1F1, no recurrence reuse
double hyp1f1_series(double a, double b, double z, int terms) {
    long double sum = 0.0L;
    for (int k = 0; k < terms; ++k) {
        long double t = 1.0L;
        for (int j = 0; j < k; ++j) t *= (a + j) / (long double)(b + j);
        for (int j = 1; j <= k; ++j) t *= z / (long double)j;
        sum += t;
    }
    return (double)sum;
}

}  // namespace

TEST_CASE("jacobi_P seeds") {
    CHECK(jacobi_P(0, 0.3, 0.7, 0.2) == 1.0);
    // P1 = ((a+b+2)x + (a-b))/2
    CHECK(jacobi_P(1, 0.3, 0.7, 0.2) == doctest::Approx(0.5 * (3.0 * 0.2 - 0.4)));
    // Legendre case via Rodrigues value
    CHECK(jacobi_P(2, 0.0, 0.0, 0.5) == doctest::Approx(-0.125));
}

TEST_CASE("jacobi_P matches the hypergeometric representation to 1e-12") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ab(0.0, 3.0), xx(-1.0, 1.0);
    for (int n = 0; n <= 10; ++n) {
        for (int it = 0; it < 10; ++it) {
            double a = ab(rng), b = ab(rng), x = xx(rng);
            double got = jacobi_P(n, a, b, x);
            double want = jacobi_via_2f1(n, a, b, x);
            CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("hyp1F1 basics") {
    CHECK(hyp1F1(0.7, 1.3, 0.0) == 1.0);
    CHECK(hyp1F1(-1.0, 2.5, 0.8) == doctest::Approx(1.0 - 0.8 / 2.5));
    CHECK(hyp1F1(1.0, 1.0, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
    CHECK_THROWS_AS(hyp1F1(0.5, -2.0, 1.0), std::domain_error);
}

TEST_CASE("hyp1F1 matches the brute-force series") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> aa(-3.0, 3.0), zz(-2.0, 2.0);
    for (int it = 0; it < 40; ++it) {
        double a = aa(rng), z = zz(rng);
        double b = std::abs(aa(rng)) + 0.5;
        double got = hyp1F1(a, b, z);
        double want = hyp1f1_series(a, b, z, 60);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("terminating 1F1: extra terms change nothing") {
    // polynomial case a = -n: summing far past the truncation is identical
    for (int n : {0, 1, 3, 7}) {
        double a = -n, b = 1.7, z = 1.9;
        double poly = hyp1F1(a, b, z);
        double longer = hyp1f1_series(a, b, z, n + 40);
        CHECK(poly == doctest::Approx(longer).epsilon(1e-14));
    }
}
