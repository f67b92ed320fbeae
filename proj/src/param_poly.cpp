#include "kcn/param_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kcn {

bool rational_sqrt(const Rational& s, Rational& root) {
    if (sgn(s) < 0) return false;
    mpz_class num = s.get_num(), den = s.get_den();
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), 2) == 0) return false;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), 2) == 0) return false;
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

ParamPoly ParamPoly::constant(const Rational& q) {
    ParamPoly p;
    if (sgn(q) != 0) p.terms_.push_back({ParamExp{}, q});
    return p;
}

ParamPoly ParamPoly::gen(Param g, int power) {
    if (power < 0) throw std::invalid_argument("ParamPoly::gen: negative power");
    ParamPoly p;
    if (g == Param::I) {
        // i^power reduced mod i^2 = -1
        int m = power % 4;
        ParamExp e;
        Rational q(1);
        if (m == 1 || m == 3) e.e[0] = 1;
        if (m == 2 || m == 3) q = -1;
        p.terms_.push_back({e, q});
        return p;
    }
    ParamExp e;
    e.e[static_cast<int>(g)] = static_cast<std::uint8_t>(power);
    p.terms_.push_back({e, Rational(1)});
    return p;
}

ParamPoly ParamPoly::term(const Rational& q, std::initializer_list<std::pair<Param, int>> gens) {
    ParamPoly p = constant(q);
    for (auto& [g, k] : gens) p = p * gen(g, k);
    return p;
}

bool ParamPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == ParamExp{});
}

Rational ParamPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("ParamPoly: not a constant");
    return terms_[0].second;
}

int ParamPoly::degree() const {
    int d = 0;
    for (auto& [m, q] : terms_) d = std::max(d, m.total());
    return d;
}

void ParamPoly::add_term(const ParamExp& m, const Rational& q) {
    if (sgn(q) == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& t, const ParamExp& k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) {
        it->second += q;
        if (sgn(it->second) == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {m, q});
    }
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly p = *this;
    for (auto& [m, q] : p.terms_) q = -q;
    return p;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
    if (terms_.empty()) return *this = o;
    std::vector<std::pair<ParamExp, Rational>> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), ae = terms_.end();
    auto b = o.terms_.begin(), be = o.terms_.end();
    while (a != ae && b != be) {
        if (a->first < b->first) {
            out.push_back(*a++);
        } else if (b->first < a->first) {
            out.push_back(*b++);
        } else {
            Rational s = a->second + b->second;
            if (sgn(s) != 0) out.push_back({a->first, s});
            ++a;
            ++b;
        }
    }
    out.insert(out.end(), a, ae);
    out.insert(out.end(), b, be);
    terms_ = std::move(out);
    return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) { return *this += -o; }

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly out;
    for (auto& [ma, qa] : a.terms_) {
        for (auto& [mb, qb] : b.terms_) {
            ParamExp m;
            Rational q = qa * qb;
            int ii = ma.e[0] + mb.e[0];
            if (ii >= 2) {
                ii -= 2;
                q = -q;
            }
            m.e[0] = static_cast<std::uint8_t>(ii);
            for (int k = 1; k < kNumParams; ++k) {
                int s = ma.e[k] + mb.e[k];
                if (s > 255) throw std::overflow_error("ParamPoly: exponent overflow");
                m.e[k] = static_cast<std::uint8_t>(s);
            }
            out.add_term(m, q);
        }
    }
    return out;
}

ParamPoly ParamPoly::scaled(const Rational& q) const {
    if (sgn(q) == 0) return {};
    ParamPoly p = *this;
    for (auto& [m, c] : p.terms_) c *= q;
    return p;
}

ParamPoly ParamPoly::conj() const {
    ParamPoly p = *this;
    for (auto& [m, q] : p.terms_)
        if (m.e[0]) q = -q;
    return p;
}

bool operator<(const ParamPoly& a, const ParamPoly& b) {
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const auto& s, const auto& t) {
            if (s.first == t.first) return s.second < t.second;
            return s.first < t.first;
        });
}

std::complex<double> ParamPoly::eval(const ParamVals& v) const {
    std::complex<double> acc{0.0, 0.0};
    for (auto& [m, q] : terms_) {
        std::complex<double> t{q.get_d(), 0.0};
        if (m.e[0]) t *= std::complex<double>{0.0, 1.0};
        auto powd = [](double base, int k) {
            double r = 1;
            for (int j = 0; j < k; ++j) r *= base;
            return r;
        };
        t *= powd(v.hbar, m.e[1]) * powd(v.c0, m.e[2]) * powd(v.c1, m.e[3]) * powd(v.c2, m.e[4]);
        acc += t;
    }
    return acc;
}

GaussRational ParamPoly::eval_exact(const ParamValsExact& v) const {
    GaussRational acc;
    for (auto& [m, q] : terms_) {
        Rational t = q;
        auto powq = [](const Rational& base, int k) {
            Rational r(1);
            for (int j = 0; j < k; ++j) r *= base;
            return r;
        };
        t *= powq(v.hbar, m.e[1]) * powq(v.c0, m.e[2]) * powq(v.c1, m.e[3]) * powq(v.c2, m.e[4]);
        if (m.e[0])
            acc += GaussRational(Rational(0), t);
        else
            acc += GaussRational(t);
    }
    return acc;
}

std::string ParamPoly::to_string() const {
    if (terms_.empty()) return "0";
    static const char* names[kNumParams] = {"i", "hbar", "c0", "c1", "c2"};
    std::ostringstream os;
    bool first = true;
    for (auto& [m, q] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << q.get_str();
        for (int k = 0; k < kNumParams; ++k) {
            if (m.e[k] == 0) continue;
            os << "*" << names[k];
            if (m.e[k] > 1) os << "^" << int(m.e[k]);
        }
    }
    return os.str();
}

}  // namespace kcn
