#include "kcn/canonical.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

namespace kcn {

namespace {

void check_token(const CancelToken* tok) {
    if (tok && tok->is_cancelled()) throw OperationCancelled();
}

VarMono mono_mul(const VarMono& a, const VarMono& b) {
    VarMono m;
    for (std::size_t k = 0; k < m.e.size(); ++k) {
        int s = a.e[k] + b.e[k];
        if (s > 255) throw std::overflow_error("VarMono: exponent overflow");
        m.e[k] = static_cast<std::uint8_t>(s);
    }
    return m;
}

NumPoly sorted_from_map(std::unordered_map<VarMono, ParamPoly, VarMonoHash>&& acc) {
    NumPoly out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(),
              [](const PolyTerm& s, const PolyTerm& t) { return s.mono < t.mono; });
    return out;
}

}  // namespace

NumPoly poly_add(const NumPoly& a, const NumPoly& b) {
    NumPoly out;
    out.reserve(a.size() + b.size());
    auto i = a.begin(), ie = a.end();
    auto j = b.begin(), je = b.end();
    while (i != ie && j != je) {
        if (i->mono < j->mono) {
            out.push_back(*i++);
        } else if (j->mono < i->mono) {
            out.push_back(*j++);
        } else {
            ParamPoly c = i->coeff + j->coeff;
            if (!c.is_zero()) out.push_back({i->mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), i, ie);
    out.insert(out.end(), j, je);
    return out;
}

NumPoly poly_neg(const NumPoly& a) {
    NumPoly out = a;
    for (auto& t : out) t.coeff = -t.coeff;
    return out;
}

NumPoly poly_scale(const NumPoly& a, const ParamPoly& c) {
    if (c.is_zero()) return {};
    NumPoly out;
    out.reserve(a.size());
    for (auto& t : a) {
        ParamPoly pc = t.coeff * c;
        if (!pc.is_zero()) out.push_back({t.mono, std::move(pc)});
    }
    return out;
}

NumPoly poly_mul(const NumPoly& a, const NumPoly& b, int N, const CancelToken* tok) {
    std::unordered_map<VarMono, ParamPoly, VarMonoHash> acc;
    acc.reserve(a.size() + b.size());
    std::size_t ops = 0;
    for (auto& ta : a) {
        for (auto& tb : b) {
            if (((++ops) & 0xfff) == 0) check_token(tok);
            ParamPoly c = ta.coeff * tb.coeff;
            if (c.is_zero()) continue;
            int re = ta.mono.rexp() + tb.mono.rexp();
            VarMono m = mono_mul(ta.mono, tb.mono);
            if (re < 2) {
                auto& slot = acc[m];
                slot += c;
            } else {
                // r^2 -> sum_i x_i^2
                m.set_r(0);
                for (int i = 0; i < N; ++i) {
                    VarMono mi = m;
                    int s = mi.xexp(i) + 2;
                    if (s > 255) throw std::overflow_error("VarMono: exponent overflow");
                    mi.set_x(i, s);
                    acc[mi] += c;
                }
            }
        }
    }
    return sorted_from_map(std::move(acc));
}

std::optional<NumPoly> poly_div_sumsq(const NumPoly& a, int limit) {
    if (a.empty()) return NumPoly{};
    // divisor d = x_0^2 + ... + x_{limit-1}^2, leading term x_0^2
    std::map<VarMono, ParamPoly> rem;
    for (auto& t : a) rem[t.mono] = t.coeff;
    NumPoly quot;
    while (!rem.empty()) {
        auto lead = std::prev(rem.end());
        const VarMono lm = lead->first;
        if (lm.xexp(0) < 2) return std::nullopt;
        ParamPoly qc = lead->second;
        VarMono qm = lm;
        qm.set_x(0, lm.xexp(0) - 2);
        quot.push_back({qm, qc});
        for (int i = 0; i < limit; ++i) {
            VarMono m = qm;
            int s = m.xexp(i) + 2;
            if (s > 255) throw std::overflow_error("VarMono: exponent overflow");
            m.set_x(i, s);
            auto it = rem.find(m);
            if (it == rem.end()) {
                rem[m] = -qc;
            } else {
                it->second -= qc;
                if (it->second.is_zero()) rem.erase(it);
            }
        }
    }
    std::sort(quot.begin(), quot.end(),
              [](const PolyTerm& s, const PolyTerm& t) { return s.mono < t.mono; });
    return quot;
}

CanonicalExpr CanonicalExpr::constant(int N, ParamPoly c) {
    CanonicalExpr e(N);
    if (!c.is_zero()) e.num_.push_back({VarMono{}, std::move(c)});
    return e;
}

CanonicalExpr CanonicalExpr::x(int N, int i) {
    CanonicalExpr e(N);
    VarMono m;
    m.set_x(i, 1);
    e.num_.push_back({m, ParamPoly::one()});
    return e;
}

CanonicalExpr CanonicalExpr::p(int N, int i) {
    CanonicalExpr e(N);
    VarMono m;
    m.set_p(i, 1);
    e.num_.push_back({m, ParamPoly::one()});
    return e;
}

CanonicalExpr CanonicalExpr::r(int N) {
    CanonicalExpr e(N);
    VarMono m;
    m.set_r(1);
    e.num_.push_back({m, ParamPoly::one()});
    return e;
}

CanonicalExpr CanonicalExpr::inv_r(int N) {
    CanonicalExpr e(N);
    e.den_ = {1, 0, 0};
    e.num_.push_back({VarMono{}, ParamPoly::one()});
    return e;
}

CanonicalExpr CanonicalExpr::inv_r_plus_xN(int N) {
    CanonicalExpr e(N);
    e.den_ = {0, 1, 0};
    e.num_.push_back({VarMono{}, ParamPoly::one()});
    return e;
}

CanonicalExpr CanonicalExpr::inv_r_minus_xN(int N) {
    CanonicalExpr e(N);
    e.den_ = {0, 0, 1};
    e.num_.push_back({VarMono{}, ParamPoly::one()});
    return e;
}

bool CanonicalExpr::has_p() const {
    for (auto& t : num_)
        if (t.mono.has_p()) return true;
    return false;
}

CanonicalExpr CanonicalExpr::make(int N, DenExp den, NumPoly num) {
    CanonicalExpr e(N);
    e.den_ = den;
    e.num_ = std::move(num);
    if (e.num_.empty()) {
        e.den_ = DenExp{};
        return e;
    }
    e.cancel_trivial_factors();
    return e;
}

void CanonicalExpr::cancel_trivial_factors() {
    const int N = n_;
    auto split_r = [](const NumPoly& v, NumPoly& n0, NumPoly& n1) {
        for (auto& t : v) {
            if (t.mono.rexp() == 0) {
                n0.push_back(t);
            } else {
                PolyTerm s = t;
                s.mono.set_r(0);
                n1.push_back(s);
            }
        }
    };
    auto with_r = [](NumPoly v) {
        for (auto& t : v) t.mono.set_r(1);
        return v;
    };
    // cheap necessary condition: exact division by a sum of squares can only
    // start when the dividend is empty or its lead monomial carries x1^2
    auto divisible_lead = [](const NumPoly& t) {
        return t.empty() || t.back().mono.xexp(0) >= 2;
    };
    bool progress = true;
    while (progress && !num_.empty()) {
        progress = false;
        NumPoly n0, n1;
        split_r(num_, n0, n1);
        if (den_.a > 0 && divisible_lead(n0)) {
            if (auto q1 = poly_div_sumsq(n0, N)) {
                num_ = poly_add(n1, with_r(*q1));
                den_.a -= 1;
                progress = true;
                continue;
            }
        }
        if (den_.b > 0 || den_.c > 0) {
            NumPoly xN{{[&] {
                            VarMono m;
                            m.set_x(N - 1, 1);
                            return m;
                        }(),
                        ParamPoly::one()}};
            if (den_.b > 0) {
                NumPoly t = poly_add(n0, poly_neg(poly_mul(n1, xN, N)));
                if (divisible_lead(t)) {
                    if (auto q1 = poly_div_sumsq(t, N - 1)) {
                        NumPoly q0 = poly_add(n1, poly_neg(poly_mul(*q1, xN, N)));
                        num_ = poly_add(q0, with_r(*q1));
                        den_.b -= 1;
                        progress = true;
                        continue;
                    }
                }
            }
            if (den_.c > 0) {
                NumPoly t = poly_add(n0, poly_mul(n1, xN, N));
                if (divisible_lead(t)) {
                    if (auto q1 = poly_div_sumsq(t, N - 1)) {
                        NumPoly q0 = poly_add(n1, poly_mul(*q1, xN, N));
                        num_ = poly_add(q0, with_r(*q1));
                        den_.c -= 1;
                        progress = true;
                        continue;
                    }
                }
            }
        }
    }
    if (num_.empty()) den_ = DenExp{};
}

namespace {

// numerator of the factor list r^a (r+xN)^b (r-xN)^c as a reduced polynomial
NumPoly factor_power(int N, int da, int db, int dc) {
    NumPoly out{{VarMono{}, ParamPoly::one()}};
    VarMono rm;
    rm.set_r(1);
    NumPoly rp{{rm, ParamPoly::one()}};
    VarMono xm;
    xm.set_x(N - 1, 1);
    NumPoly plus = poly_add(rp, NumPoly{{xm, ParamPoly::one()}});
    NumPoly minus = poly_add(rp, NumPoly{{xm, -ParamPoly::one()}});
    for (int k = 0; k < da; ++k) out = poly_mul(out, rp, N);
    for (int k = 0; k < db; ++k) out = poly_mul(out, plus, N);
    for (int k = 0; k < dc; ++k) out = poly_mul(out, minus, N);
    return out;
}

}  // namespace

CanonicalExpr CanonicalExpr::operator-() const {
    CanonicalExpr e = *this;
    e.num_ = poly_neg(e.num_);
    return e;
}

CanonicalExpr operator+(const CanonicalExpr& a, const CanonicalExpr& b) {
    if (a.n_ != b.n_) {
        if (a.is_zero() && a.n_ == 0) return b;
        if (b.is_zero() && b.n_ == 0) return a;
        throw DimensionMismatch();
    }
    const int N = a.n_;
    DenExp d{std::max(a.den_.a, b.den_.a), std::max(a.den_.b, b.den_.b),
             std::max(a.den_.c, b.den_.c)};
    NumPoly na = a.num_, nb = b.num_;
    if (d.a > a.den_.a || d.b > a.den_.b || d.c > a.den_.c)
        na = poly_mul(na, factor_power(N, d.a - a.den_.a, d.b - a.den_.b, d.c - a.den_.c), N);
    if (d.a > b.den_.a || d.b > b.den_.b || d.c > b.den_.c)
        nb = poly_mul(nb, factor_power(N, d.a - b.den_.a, d.b - b.den_.b, d.c - b.den_.c), N);
    return CanonicalExpr::make(N, d, poly_add(na, nb));
}

CanonicalExpr operator-(const CanonicalExpr& a, const CanonicalExpr& b) { return a + (-b); }

CanonicalExpr operator*(const CanonicalExpr& a, const CanonicalExpr& b) {
    if (a.n_ != b.n_) throw DimensionMismatch();
    if (a.is_zero() || b.is_zero()) return CanonicalExpr::zero(a.n_);
    DenExp d{a.den_.a + b.den_.a, a.den_.b + b.den_.b, a.den_.c + b.den_.c};
    return CanonicalExpr::make(a.n_, d, poly_mul(a.num_, b.num_, a.n_));
}

CanonicalExpr CanonicalExpr::scaled(const ParamPoly& c) const {
    if (c.is_zero()) return CanonicalExpr::zero(n_);
    return make(n_, den_, poly_scale(num_, c));
}

CanonicalExpr CanonicalExpr::reflected(int k) const {
    if (k < 0 || k >= n_ - 1)
        throw std::invalid_argument("reflected: index must keep xN fixed");
    CanonicalExpr e = *this;
    for (auto& t : e.num_) {
        int parity = t.mono.xexp(k) + t.mono.pexp(k);
        if (parity % 2) t.coeff = -t.coeff;
    }
    std::sort(e.num_.begin(), e.num_.end(),
              [](const PolyTerm& s, const PolyTerm& t) { return s.mono < t.mono; });
    return e;
}

CanonicalExpr CanonicalExpr::conj() const {
    CanonicalExpr e = *this;
    for (auto& t : e.num_) t.coeff = t.coeff.conj();
    return e;
}

bool operator==(const CanonicalExpr& a, const CanonicalExpr& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.n_ != b.n_) return false;
    if (a.den_ == b.den_) return a.num_ == b.num_;
    // compare after cross-multiplication; exact because the quotient ring is
    // an integral domain
    DenExp d{std::max(a.den_.a, b.den_.a), std::max(a.den_.b, b.den_.b),
             std::max(a.den_.c, b.den_.c)};
    NumPoly na = poly_mul(a.num_, factor_power(a.n_, d.a - a.den_.a, d.b - a.den_.b, d.c - a.den_.c),
                          a.n_);
    NumPoly nb = poly_mul(b.num_, factor_power(a.n_, d.a - b.den_.a, d.b - b.den_.b, d.c - b.den_.c),
                          a.n_);
    return na == nb;
}

bool is_zero(const CanonicalExpr& e) { return e.is_zero(); }

CanonicalExpr partial_derivative(const CanonicalExpr& e, Var v) {
    const int N = e.dim();
    if (v.index < 0 || v.index >= N) throw std::invalid_argument("partial_derivative: bad index");
    const auto& den = e.den();
    if (v.kind == Var::Kind::P) {
        NumPoly out;
        for (auto& t : e.num()) {
            int k = t.mono.pexp(v.index);
            if (k == 0) continue;
            PolyTerm s = t;
            s.mono.set_p(v.index, k - 1);
            s.coeff = s.coeff.scaled(Rational(k));
            out.push_back(s);
        }
        std::sort(out.begin(), out.end(),
                  [](const PolyTerm& s, const PolyTerm& t) { return s.mono < t.mono; });
        return CanonicalExpr::make(N, den, std::move(out));
    }

    const int vi = v.index;
    // dP = D0 + D1 / r, with D0 from x-exponents and D1 from the r factor
    NumPoly d0, d1;
    for (auto& t : e.num()) {
        int k = t.mono.xexp(vi);
        if (k > 0) {
            PolyTerm s = t;
            s.mono.set_x(vi, k - 1);
            s.coeff = s.coeff.scaled(Rational(k));
            d0.push_back(s);
        }
        if (t.mono.rexp() == 1) {
            PolyTerm s = t;
            s.mono.set_r(0);
            s.mono.set_x(vi, t.mono.xexp(vi) + 1);
            d1.push_back(s);
        }
    }
    auto sort_poly = [](NumPoly& p) {
        std::sort(p.begin(), p.end(),
                  [](const PolyTerm& s, const PolyTerm& t) { return s.mono < t.mono; });
    };
    sort_poly(d0);
    sort_poly(d1);

    VarMono rm;
    rm.set_r(1);
    NumPoly rp{{rm, ParamPoly::one()}};
    CanonicalExpr result = CanonicalExpr::make(
        N, DenExp{den.a + 1, den.b, den.c}, poly_add(poly_mul(d0, rp, N), d1));

    if (den.a > 0) {
        VarMono xm;
        xm.set_x(vi, 1);
        NumPoly xv{{xm, ParamPoly::constant(Rational(-den.a))}};
        result += CanonicalExpr::make(N, DenExp{den.a + 2, den.b, den.c},
                                      poly_mul(e.num(), xv, N));
    }
    if (den.b > 0) {
        // d(r+xN)/dx_v = x_v/r + delta_{v,N}
        VarMono xm;
        xm.set_x(vi, 1);
        NumPoly fac{{xm, ParamPoly::one()}};
        if (vi == N - 1) fac = poly_add(fac, rp);
        result += CanonicalExpr::make(
            N, DenExp{den.a + 1, den.b + 1, den.c},
            poly_scale(poly_mul(e.num(), fac, N), ParamPoly::constant(Rational(-den.b))));
    }
    if (den.c > 0) {
        VarMono xm;
        xm.set_x(vi, 1);
        NumPoly fac{{xm, ParamPoly::one()}};
        if (vi == N - 1) fac = poly_add(fac, poly_neg(rp));
        result += CanonicalExpr::make(
            N, DenExp{den.a + 1, den.b, den.c + 1},
            poly_scale(poly_mul(e.num(), fac, N), ParamPoly::constant(Rational(-den.c))));
    }
    return result;
}

CanonicalExpr poisson_bracket(const CanonicalExpr& f, const CanonicalExpr& g,
                              BracketConvention conv, const CancelToken* tok) {
    if (f.dim() != g.dim()) throw DimensionMismatch();
    const int N = f.dim();
    CanonicalExpr acc = CanonicalExpr::zero(N);
    for (int j = 0; j < N; ++j) {
        check_token(tok);
        CanonicalExpr fp = partial_derivative(f, Var::p(j));
        CanonicalExpr gx = partial_derivative(g, Var::x(j));
        CanonicalExpr fx = partial_derivative(f, Var::x(j));
        CanonicalExpr gp = partial_derivative(g, Var::p(j));
        acc += fp * gx - fx * gp;
    }
    if (conv == BracketConvention::Standard) acc = -acc;
    return acc;
}

namespace {

GaussRational eval_poly_exact(const NumPoly& poly, const std::vector<Rational>& xv,
                              const std::vector<Rational>& pv, const Rational& rv,
                              const ParamValsExact& params, int N) {
    GaussRational acc;
    for (auto& t : poly) {
        Rational v(1);
        for (int i = 0; i < N; ++i) {
            for (int k = 0; k < t.mono.xexp(i); ++k) v *= xv[i];
            for (int k = 0; k < t.mono.pexp(i); ++k) {
                if (static_cast<std::size_t>(i) >= pv.size())
                    throw std::invalid_argument("eval: p value missing");
                v *= pv[i];
            }
        }
        if (t.mono.rexp()) v *= rv;
        acc += v * t.coeff.eval_exact(params);
    }
    return acc;
}

}  // namespace

GaussRational eval_exact(const CanonicalExpr& e, const EvalPoint& pt,
                         const ParamValsExact& params) {
    const int N = e.dim();
    if (static_cast<int>(pt.x.size()) != N) throw std::invalid_argument("eval: x size != N");
    Rational s(0);
    for (auto& v : pt.x) s += v * v;
    if (sgn(s) <= 0) throw std::invalid_argument("eval: need sum x_i^2 > 0");
    Rational rv;
    if (!rational_sqrt(s, rv))
        throw std::invalid_argument("eval_exact: point is not Pythagorean");
    Rational xN = pt.x[N - 1];
    const auto& d = e.den();
    Rational denval(1);
    for (int k = 0; k < d.a; ++k) denval *= rv;
    Rational fplus = rv + xN, fminus = rv - xN;
    if ((d.b > 0 && sgn(fplus) == 0) || (d.c > 0 && sgn(fminus) == 0) ||
        (d.a > 0 && sgn(rv) == 0))
        throw PoleError();
    for (int k = 0; k < d.b; ++k) denval *= fplus;
    for (int k = 0; k < d.c; ++k) denval *= fminus;
    GaussRational numval = eval_poly_exact(e.num(), pt.x, pt.p, rv, params, N);
    return GaussRational(Rational(1) / denval) * numval;
}

std::complex<double> eval_numeric(const CanonicalExpr& e, const EvalPoint& pt,
                                  const ParamVals& params) {
    const int N = e.dim();
    if (static_cast<int>(pt.x.size()) != N) throw std::invalid_argument("eval: x size != N");
    double s = 0;
    std::vector<double> xv(N), pv;
    for (int i = 0; i < N; ++i) {
        xv[i] = pt.x[i].get_d();
        s += xv[i] * xv[i];
    }
    pv.reserve(pt.p.size());
    for (auto& q : pt.p) pv.push_back(q.get_d());
    if (s <= 0) throw std::invalid_argument("eval: need sum x_i^2 > 0");
    double rv = std::sqrt(s);
    const auto& d = e.den();
    double fplus = rv + xv[N - 1], fminus = rv - xv[N - 1];
    const double tol = 1e-14 * rv;
    if ((d.a > 0 && rv == 0.0) || (d.b > 0 && std::abs(fplus) <= tol) ||
        (d.c > 0 && std::abs(fminus) <= tol))
        throw PoleError();
    double denval = 1;
    for (int k = 0; k < d.a; ++k) denval *= rv;
    for (int k = 0; k < d.b; ++k) denval *= fplus;
    for (int k = 0; k < d.c; ++k) denval *= fminus;
    std::complex<double> acc{0, 0};
    for (auto& t : e.num()) {
        double v = 1;
        for (int i = 0; i < N; ++i) {
            for (int k = 0; k < t.mono.xexp(i); ++k) v *= xv[i];
            for (int k = 0; k < t.mono.pexp(i); ++k) {
                if (static_cast<std::size_t>(i) >= pv.size())
                    throw std::invalid_argument("eval: p value missing");
                v *= pv[i];
            }
        }
        if (t.mono.rexp()) v *= rv;
        acc += v * t.coeff.eval(params);
    }
    return acc / denval;
}

NumPoly CanonicalExpr::numerator_for_den(const DenExp& dmax) const {
    if (dmax.a < den_.a || dmax.b < den_.b || dmax.c < den_.c)
        throw std::invalid_argument("numerator_for_den: dmax must dominate den");
    if (dmax == den_) return num_;
    return poly_mul(num_, factor_power(n_, dmax.a - den_.a, dmax.b - den_.b, dmax.c - den_.c),
                    n_);
}

std::string CanonicalExpr::dump() const {
    std::ostringstream os;
    os << "N=" << n_ << " den r^" << den_.a << " (r+xN)^" << den_.b << " (r-xN)^" << den_.c
       << "\n";
    for (auto& t : num_) {
        bool any = false;
        for (int i = 0; i < n_; ++i) {
            for (int rep = 0, k = t.mono.xexp(i); rep < (k ? 1 : 0); ++rep) {
                os << "x" << (i + 1);
                if (k > 1) os << "^" << k;
                os << " ";
                any = true;
            }
        }
        for (int i = 0; i < n_; ++i) {
            int k = t.mono.pexp(i);
            if (k) {
                os << "p" << (i + 1);
                if (k > 1) os << "^" << k;
                os << " ";
                any = true;
            }
        }
        if (t.mono.rexp()) {
            os << "r ";
            any = true;
        }
        if (!any) os << "1 ";
        os << "| " << t.coeff.to_string() << "\n";
    }
    return os.str();
}

}  // namespace kcn
