#ifndef KCN_RATIONAL_HPP
#define KCN_RATIONAL_HPP

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace kcn {

using Rational = mpq_class;

// mpq_class(n, d) does not canonicalize; every ratio built from a possibly
// non-coprime pair must go through here or exact comparisons break
inline Rational ratio(long n, long d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Exact element of Q(i). The imaginary unit shows up in every quantum
// coefficient, so exact evaluation has to carry both components.
struct GaussRational {
    Rational re{0};
    Rational im{0};

    GaussRational() = default;
    GaussRational(Rational r) : re(std::move(r)) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    GaussRational& operator+=(const GaussRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return GaussRational(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GaussRational operator*(const Rational& a, const GaussRational& b) {
        return GaussRational(a * b.re, a * b.im);
    }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    GaussRational inverse() const {
        Rational n = re * re + im * im;
        if (sgn(n) == 0) throw std::domain_error("GaussRational: division by zero");
        return GaussRational(re / n, -im / n);
    }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

// r = sqrt(s) for exact rational s, if s is a perfect square of a rational.
bool rational_sqrt(const Rational& s, Rational& root);

}  // namespace kcn

#endif
