#ifndef KCN_SPECIAL_HPP
#define KCN_SPECIAL_HPP

#include <stdexcept>

namespace kcn {

// Jacobi polynomial P_n^(alpha,beta)(x) by the three-term recurrence.
double jacobi_P(int n, double alpha, double beta, double x);

// Confluent hypergeometric 1F1(a,b;z). Exact finite sum when a is a
// non-positive integer; power series to 1e-14 relative otherwise.
double hyp1F1(double a, double b, double z);

}  // namespace kcn

#endif
