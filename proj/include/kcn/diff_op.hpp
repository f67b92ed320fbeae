#ifndef KCN_DIFF_OP_HPP
#define KCN_DIFF_OP_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "kcn/canonical.hpp"

namespace kcn {

struct MultiIndex {
    std::array<std::uint8_t, kMaxDim> d{};

    int order() const {
        int t = 0;
        for (auto v : d) t += v;
        return t;
    }
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.d == b.d; }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        int ta = a.order(), tb = b.order();
        if (ta != tb) return ta < tb;
        return a.d < b.d;
    }
};

// Linear differential operator: sum of position-space coefficients times
// partial-derivative multi-indices. Coefficients never contain p variables;
// momenta enter through momentum() = -i hbar d/dx.
class DiffOp {
public:
    struct Term {
        MultiIndex alpha;
        CanonicalExpr coeff;
    };

    DiffOp() = default;
    explicit DiffOp(int N) : n_(N) {}

    static DiffOp zero(int N) { return DiffOp(N); }
    static DiffOp identity(int N) { return from_coeff(CanonicalExpr::rational(N, Rational(1))); }
    static DiffOp from_coeff(CanonicalExpr coeff);
    static DiffOp coordinate(int N, int i) { return from_coeff(CanonicalExpr::x(N, i)); }
    static DiffOp momentum(int N, int i);  // -i hbar d/dx_i
    static DiffOp partial(int N, const MultiIndex& alpha);

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    int order() const;
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    DiffOp operator-() const;
    friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b);
    DiffOp& operator+=(const DiffOp& o) { return *this = *this + o; }
    DiffOp& operator-=(const DiffOp& o) { return *this = *this - o; }
    DiffOp scaled(const ParamPoly& c) const;
    DiffOp scaled(const Rational& q) const { return scaled(ParamPoly::constant(q)); }

    // formal transpose: sum coeff*D^alpha -> sum (-D)^alpha o conj(coeff)
    DiffOp adjoint() const;

    // apply to a position-space expression
    CanonicalExpr apply(const CanonicalExpr& f) const;

    friend bool operator==(const DiffOp& a, const DiffOp& b);
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    std::string dump() const;

    static DiffOp make(int N, std::vector<Term> terms);

private:
    int n_ = 0;
    std::vector<Term> terms_;  // sorted by alpha, canonical, nonzero coeffs
};

DiffOp compose(const DiffOp& P, const DiffOp& Q, const CancelToken* tok = nullptr);
inline DiffOp compose(const DiffOp& P, const DiffOp& Q, const DiffOp& R,
                      const CancelToken* tok = nullptr) {
    return compose(compose(P, Q, tok), R, tok);
}
inline DiffOp compose(const DiffOp& P, const DiffOp& Q, const DiffOp& R, const DiffOp& S,
                      const CancelToken* tok = nullptr) {
    return compose(compose(P, Q, R, tok), S, tok);
}
DiffOp commutator(const DiffOp& P, const DiffOp& Q, const CancelToken* tok = nullptr);
DiffOp anticommutator(const DiffOp& P, const DiffOp& Q, const CancelToken* tok = nullptr);
bool is_zero(const DiffOp& op);

// number of worker threads compose() may use (default: hardware concurrency)
void set_compose_threads(int n);

}  // namespace kcn

#endif
