#ifndef KCN_CANONICAL_HPP
#define KCN_CANONICAL_HPP

#include <array>
#include <atomic>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcn/param_poly.hpp"
#include "kcn/rational.hpp"

namespace kcn {

inline constexpr int kMaxDim = 8;

struct CancelToken {
    std::atomic<bool> cancelled{false};
    void cancel() { cancelled.store(true, std::memory_order_relaxed); }
    bool is_cancelled() const { return cancelled.load(std::memory_order_relaxed); }
};

struct OperationCancelled : std::runtime_error {
    OperationCancelled() : std::runtime_error("operation cancelled") {}
};
struct DimensionMismatch : std::invalid_argument {
    DimensionMismatch() : std::invalid_argument("dimension mismatch") {}
};
struct UnsupportedDenominator : std::invalid_argument {
    UnsupportedDenominator()
        : std::invalid_argument("division is only supported by r, r+xN, r-xN") {}
};
struct PoleError : std::domain_error {
    PoleError() : std::domain_error("evaluation at a pole of the expression") {}
};

// Monomial in x1..xN, p1..pN, r.  r-exponent is kept <= 1 by reduction
// modulo r^2 - sum x_i^2.
struct VarMono {
    std::array<std::uint8_t, 2 * kMaxDim + 1> e{};

    std::uint8_t xexp(int i) const { return e[i]; }
    std::uint8_t pexp(int i) const { return e[kMaxDim + i]; }
    std::uint8_t rexp() const { return e[2 * kMaxDim]; }
    void set_x(int i, int v) { e[i] = static_cast<std::uint8_t>(v); }
    void set_p(int i, int v) { e[kMaxDim + i] = static_cast<std::uint8_t>(v); }
    void set_r(int v) { e[2 * kMaxDim] = static_cast<std::uint8_t>(v); }

    int total_degree() const {
        int t = 0;
        for (auto v : e) t += v;
        return t;
    }
    bool has_p() const {
        for (int i = 0; i < kMaxDim; ++i)
            if (e[kMaxDim + i]) return true;
        return false;
    }
    friend bool operator==(const VarMono& a, const VarMono& b) { return a.e == b.e; }
    friend bool operator<(const VarMono& a, const VarMono& b) {
        int ta = a.total_degree(), tb = b.total_degree();
        if (ta != tb) return ta < tb;
        return a.e < b.e;
    }
};

struct VarMonoHash {
    std::size_t operator()(const VarMono& m) const {
        std::size_t h = 1469598103934665603ull;
        for (auto v : m.e) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct PolyTerm {
    VarMono mono;
    ParamPoly coeff;
    friend bool operator==(const PolyTerm& a, const PolyTerm& b) {
        return a.mono == b.mono && a.coeff == b.coeff;
    }
};

// numerator polynomial: sorted by monomial, no zero coefficients, r-degree <= 1
using NumPoly = std::vector<PolyTerm>;

NumPoly poly_add(const NumPoly& a, const NumPoly& b);
NumPoly poly_neg(const NumPoly& a);
NumPoly poly_mul(const NumPoly& a, const NumPoly& b, int N, const CancelToken* tok = nullptr);
NumPoly poly_scale(const NumPoly& a, const ParamPoly& c);
// exact division by sum_{i<limit} x_i^2; nullopt when not divisible
std::optional<NumPoly> poly_div_sumsq(const NumPoly& a, int limit);

// Denominator exponents for r^a (r+xN)^b (r-xN)^c.
struct DenExp {
    int a = 0, b = 0, c = 0;
    friend bool operator==(const DenExp&, const DenExp&) = default;
};

struct EvalPoint {
    std::vector<Rational> x;
    std::vector<Rational> p;  // may be empty for position-only expressions
};

class CanonicalExpr {
public:
    CanonicalExpr() = default;
    explicit CanonicalExpr(int N) : n_(N) {}

    static CanonicalExpr zero(int N) { return CanonicalExpr(N); }
    static CanonicalExpr constant(int N, ParamPoly c);
    static CanonicalExpr rational(int N, const Rational& q) {
        return constant(N, ParamPoly::constant(q));
    }
    static CanonicalExpr x(int N, int i);
    static CanonicalExpr p(int N, int i);
    static CanonicalExpr r(int N);
    // 1/r, 1/(r+xN), 1/(r-xN)
    static CanonicalExpr inv_r(int N);
    static CanonicalExpr inv_r_plus_xN(int N);
    static CanonicalExpr inv_r_minus_xN(int N);

    int dim() const { return n_; }
    const DenExp& den() const { return den_; }
    const NumPoly& num() const { return num_; }
    bool is_zero() const { return num_.empty(); }
    std::size_t size() const { return num_.size(); }
    bool has_p() const;

    CanonicalExpr operator-() const;
    friend CanonicalExpr operator+(const CanonicalExpr& a, const CanonicalExpr& b);
    friend CanonicalExpr operator-(const CanonicalExpr& a, const CanonicalExpr& b);
    friend CanonicalExpr operator*(const CanonicalExpr& a, const CanonicalExpr& b);
    CanonicalExpr& operator+=(const CanonicalExpr& o) { return *this = *this + o; }
    CanonicalExpr& operator-=(const CanonicalExpr& o) { return *this = *this - o; }
    CanonicalExpr& operator*=(const CanonicalExpr& o) { return *this = *this * o; }
    CanonicalExpr scaled(const ParamPoly& c) const;
    CanonicalExpr scaled(const Rational& q) const { return scaled(ParamPoly::constant(q)); }

    // substitute x_k -> -x_k, p_k -> -p_k (reflection); k < N-1 keeps the
    // denominator class closed
    CanonicalExpr reflected(int k) const;
    // i -> -i on every coefficient
    CanonicalExpr conj() const;

    friend bool operator==(const CanonicalExpr& a, const CanonicalExpr& b);
    friend bool operator!=(const CanonicalExpr& a, const CanonicalExpr& b) { return !(a == b); }

    std::string dump() const;  // one monomial per line, deterministic

    // numerator after rescaling to a common denominator dmax >= den()
    NumPoly numerator_for_den(const DenExp& dmax) const;

    // raw construction (normalizes: r-reduction assumed done by caller via poly ops,
    // cancellation + zero-denominator reset applied here)
    static CanonicalExpr make(int N, DenExp den, NumPoly num);

private:
    int n_ = 0;
    DenExp den_;
    NumPoly num_;

    void cancel_trivial_factors();
};

enum class BracketConvention {
    Paper,     // {X,Y} = sum_j dX/dp_j dY/dx_j - dX/dx_j dY/dp_j
    Standard,  // the opposite sign
};

struct Var {
    enum class Kind { X, P } kind;
    int index;  // 0-based
    static Var x(int i) { return {Kind::X, i}; }
    static Var p(int i) { return {Kind::P, i}; }
};

bool is_zero(const CanonicalExpr& e);
CanonicalExpr partial_derivative(const CanonicalExpr& e, Var v);
CanonicalExpr poisson_bracket(const CanonicalExpr& f, const CanonicalExpr& g,
                              BracketConvention conv = BracketConvention::Paper,
                              const CancelToken* tok = nullptr);

std::complex<double> eval_numeric(const CanonicalExpr& e, const EvalPoint& pt,
                                  const ParamVals& params);
GaussRational eval_exact(const CanonicalExpr& e, const EvalPoint& pt,
                         const ParamValsExact& params);

}  // namespace kcn

#endif
