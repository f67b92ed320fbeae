#include "kcn/special.hpp"

#include <cmath>
#include <cstdlib>

namespace kcn {

double jacobi_P(int n, double alpha, double beta, double x) {
    if (n < 0) throw std::invalid_argument("jacobi_P: n >= 0 required");
    if (alpha <= -1.0 || beta <= -1.0)
        throw std::invalid_argument("jacobi_P: alpha, beta > -1 required");
    if (n == 0) return 1.0;
    const long double a = alpha, b = beta, z = x;
    long double p0 = 1.0L;
    long double p1 = 0.5L * (a - b) + 0.5L * (a + b + 2.0L) * z;
    for (int k = 2; k <= n; ++k) {
        long double ab = a + b;
        long double a1 = 2.0L * k * (k + ab) * (2.0L * k + ab - 2.0L);
        long double a2 = (2.0L * k + ab - 1.0L) * (a * a - b * b);
        long double a3 = (2.0L * k + ab - 1.0L) * (2.0L * k + ab) * (2.0L * k + ab - 2.0L);
        long double a4 = 2.0L * (k + a - 1.0L) * (k + b - 1.0L) * (2.0L * k + ab);
        long double p2 = ((a2 + a3 * z) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    return static_cast<double>(p1);
}

double hyp1F1(double a, double b, double z) {
    bool a_nonpos_int = a <= 0.0 && a == std::floor(a);
    bool b_nonpos_int = b <= 0.0 && b == std::floor(b);
    if (b_nonpos_int && !(a_nonpos_int && a >= b))
        throw std::domain_error("hyp1F1: b is a non-positive integer");
    if (a_nonpos_int) {
        // terminating polynomial of degree -a
        int n = static_cast<int>(-a);
        double term = 1.0, sum = 1.0;
        for (int k = 0; k < n; ++k) {
            term *= (a + k) / (b + k) * z / (k + 1.0);
            sum += term;
        }
        return sum;
    }
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 10000; ++k) {
        term *= (a + k) / (b + k) * z / (k + 1.0);
        sum += term;
        if (std::abs(term) <= 1e-14 * std::abs(sum) && k > 2) return sum;
    }
    throw std::domain_error("hyp1F1: series did not converge");
}

}  // namespace kcn
