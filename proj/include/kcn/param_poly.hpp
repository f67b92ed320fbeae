#ifndef KCN_PARAM_POLY_HPP
#define KCN_PARAM_POLY_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "kcn/rational.hpp"

namespace kcn {

// Formal parameters of the model. The imaginary unit is a ring generator
// reduced by i^2 = -1, so quantum coefficients stay exact.
enum class Param : int { I = 0, Hbar = 1, C0 = 2, C1 = 3, C2 = 4 };
inline constexpr int kNumParams = 5;

struct ParamExp {
    std::array<std::uint8_t, kNumParams> e{};

    int total() const {
        int t = 0;
        for (auto v : e) t += v;
        return t;
    }
    friend bool operator==(const ParamExp& a, const ParamExp& b) { return a.e == b.e; }
    // graded lexicographic
    friend bool operator<(const ParamExp& a, const ParamExp& b) {
        int ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb;
        return a.e < b.e;
    }
};

struct ParamVals {
    double hbar = 1.0;
    double c0 = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

struct ParamValsExact {
    Rational hbar{1};
    Rational c0{1};
    Rational c1{0};
    Rational c2{0};
};

// Polynomial over Q in (i, hbar, c0, c1, c2) with i-degree <= 1.
// Canonical form: terms sorted graded-lex, no zero coefficients.
class ParamPoly {
public:
    ParamPoly() = default;

    static ParamPoly zero() { return {}; }
    static ParamPoly one() { return constant(Rational(1)); }
    static ParamPoly constant(const Rational& q);
    static ParamPoly gen(Param p, int power = 1);
    // convenience: q * prod of generators
    static ParamPoly term(const Rational& q, std::initializer_list<std::pair<Param, int>> gens);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // constant value; requires is_constant()
    Rational constant_value() const;

    int degree() const;
    std::size_t size() const { return terms_.size(); }

    ParamPoly operator-() const;
    ParamPoly& operator+=(const ParamPoly& o);
    ParamPoly& operator-=(const ParamPoly& o);
    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }
    ParamPoly scaled(const Rational& q) const;

    // complex conjugation: i -> -i
    ParamPoly conj() const;

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }
    friend bool operator<(const ParamPoly& a, const ParamPoly& b);

    std::complex<double> eval(const ParamVals& v) const;
    GaussRational eval_exact(const ParamValsExact& v) const;

    const std::vector<std::pair<ParamExp, Rational>>& terms() const { return terms_; }

    std::string to_string() const;

private:
    // invariant: sorted by ParamExp, no zero coefficients, e[I] <= 1
    std::vector<std::pair<ParamExp, Rational>> terms_;

    void add_term(const ParamExp& m, const Rational& q);
    friend class ParamPolyBuilder;
};

}  // namespace kcn

#endif
