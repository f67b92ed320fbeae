#include "kcn/diff_op.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace kcn {

namespace {
int g_compose_threads = 0;  // 0 = auto

int compose_threads() {
    if (g_compose_threads > 0) return g_compose_threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}
}  // namespace

void set_compose_threads(int n) { g_compose_threads = n; }

DiffOp DiffOp::from_coeff(CanonicalExpr coeff) {
    DiffOp op(coeff.dim());
    if (coeff.has_p())
        throw std::invalid_argument("DiffOp coefficients must be position-only");
    if (!coeff.is_zero()) op.terms_.push_back({MultiIndex{}, std::move(coeff)});
    return op;
}

DiffOp DiffOp::momentum(int N, int i) {
    DiffOp op(N);
    MultiIndex a;
    a.d[i] = 1;
    op.terms_.push_back(
        {a, CanonicalExpr::constant(
                N, ParamPoly::term(Rational(-1), {{Param::I, 1}, {Param::Hbar, 1}}))});
    return op;
}

DiffOp DiffOp::partial(int N, const MultiIndex& alpha) {
    DiffOp op(N);
    op.terms_.push_back({alpha, CanonicalExpr::rational(N, Rational(1))});
    return op;
}

DiffOp DiffOp::make(int N, std::vector<Term> terms) {
    // bucket by multi-index, then merge each bucket over one common
    // denominator with a single sort instead of repeated canonical adds
    std::map<MultiIndex, std::vector<CanonicalExpr>> buckets;
    for (auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        buckets[t.alpha].push_back(std::move(t.coeff));
    }
    DiffOp op(N);
    for (auto& [alpha, pieces] : buckets) {
        if (pieces.size() == 1) {
            op.terms_.push_back({alpha, std::move(pieces[0])});
            continue;
        }
        DenExp dmax;
        for (auto& p : pieces) {
            dmax.a = std::max(dmax.a, p.den().a);
            dmax.b = std::max(dmax.b, p.den().b);
            dmax.c = std::max(dmax.c, p.den().c);
        }
        NumPoly all;
        for (auto& p : pieces) {
            NumPoly n = p.numerator_for_den(dmax);
            all.insert(all.end(), std::make_move_iterator(n.begin()),
                       std::make_move_iterator(n.end()));
        }
        std::sort(all.begin(), all.end(),
                  [](const PolyTerm& s, const PolyTerm& t) { return s.mono < t.mono; });
        NumPoly merged;
        merged.reserve(all.size());
        for (auto& t : all) {
            if (!merged.empty() && merged.back().mono == t.mono)
                merged.back().coeff += t.coeff;
            else
                merged.push_back(std::move(t));
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const PolyTerm& t) { return t.coeff.is_zero(); }),
                     merged.end());
        CanonicalExpr c = CanonicalExpr::make(N, dmax, std::move(merged));
        if (!c.is_zero()) op.terms_.push_back({alpha, std::move(c)});
    }
    return op;
}

int DiffOp::order() const {
    int o = 0;
    for (auto& t : terms_) o = std::max(o, t.alpha.order());
    return o;
}

DiffOp DiffOp::operator-() const {
    DiffOp op = *this;
    for (auto& t : op.terms_) t.coeff = -t.coeff;
    return op;
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
    if (a.n_ != b.n_) {
        if (a.is_zero() && a.n_ == 0) return b;
        if (b.is_zero() && b.n_ == 0) return a;
        throw DimensionMismatch();
    }
    std::vector<DiffOp::Term> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return DiffOp::make(a.n_, std::move(terms));
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }

DiffOp DiffOp::scaled(const ParamPoly& c) const {
    DiffOp op(n_);
    if (c.is_zero()) return op;
    for (auto& t : terms_) op.terms_.push_back({t.alpha, t.coeff.scaled(c)});
    return op;
}

bool operator==(const DiffOp& a, const DiffOp& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
        if (!(a.terms_[k].alpha == b.terms_[k].alpha)) return false;
        if (a.terms_[k].coeff != b.terms_[k].coeff) return false;
    }
    return true;
}

bool is_zero(const DiffOp& op) { return op.is_zero(); }

namespace {

// all gamma with gamma <= alpha componentwise, in a deterministic order
std::vector<MultiIndex> sub_indices(const MultiIndex& alpha, int N) {
    std::vector<MultiIndex> out{MultiIndex{}};
    for (int i = 0; i < N; ++i) {
        if (alpha.d[i] == 0) continue;
        std::vector<MultiIndex> next;
        next.reserve(out.size() * (alpha.d[i] + 1));
        for (auto& g : out) {
            for (int k = 0; k <= alpha.d[i]; ++k) {
                MultiIndex h = g;
                h.d[i] = static_cast<std::uint8_t>(k);
                next.push_back(h);
            }
        }
        out = std::move(next);
    }
    return out;
}

Rational binom(int n, int k) {
    Rational r(1);
    for (int j = 0; j < k; ++j) r *= ratio(n - j, j + 1);
    return r;
}

Rational multi_binom(const MultiIndex& a, const MultiIndex& g, int N) {
    Rational r(1);
    for (int i = 0; i < N; ++i) r *= binom(a.d[i], g.d[i]);
    return r;
}

// derivatives of a coefficient for a downward-closed set of multi-indices
using DerivTable = std::map<MultiIndex, CanonicalExpr>;

DerivTable derive_for(const CanonicalExpr& g, const std::vector<MultiIndex>& needed, int N,
                      const CancelToken* tok) {
    DerivTable table;
    table.emplace(MultiIndex{}, g);
    for (auto& gamma : needed) {
        if (table.count(gamma)) continue;
        for (int i = 0; i < N; ++i) {
            if (gamma.d[i] == 0) continue;
            MultiIndex prev = gamma;
            prev.d[i] -= 1;
            auto it = table.find(prev);
            if (it == table.end()) continue;
            if (tok && tok->is_cancelled()) throw OperationCancelled();
            table.emplace(gamma, partial_derivative(it->second, Var::x(i)));
            break;
        }
    }
    return table;
}

}  // namespace

DiffOp compose(const DiffOp& P, const DiffOp& Q, const CancelToken* tok) {
    if (P.dim() != Q.dim()) throw DimensionMismatch();
    const int N = P.dim();
    if (P.is_zero() || Q.is_zero()) return DiffOp::zero(N);

    // union of sub-indices over P's terms: exactly the derivative orders the
    // Leibniz expansion touches (downward closed by construction)
    std::set<MultiIndex> needed_set;
    for (auto& tp : P.terms()) {
        auto subs = sub_indices(tp.alpha, N);
        needed_set.insert(subs.begin(), subs.end());
    }
    std::vector<MultiIndex> needed(needed_set.begin(), needed_set.end());

    std::vector<DerivTable> qderivs(Q.size());
    {
        int nt = std::min<std::size_t>(compose_threads(), Q.size());
        if (nt <= 1 || Q.size() < 8) {
            for (std::size_t k = 0; k < Q.size(); ++k)
                qderivs[k] = derive_for(Q.terms()[k].coeff, needed, N, tok);
        } else {
            std::vector<std::thread> workers;
            std::atomic<std::size_t> next{0};
            std::exception_ptr derr;
            std::mutex derr_mu;
            for (int t = 0; t < nt; ++t)
                workers.emplace_back([&] {
                    try {
                        for (std::size_t k = next.fetch_add(1); k < Q.size();
                             k = next.fetch_add(1))
                            qderivs[k] = derive_for(Q.terms()[k].coeff, needed, N, tok);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(derr_mu);
                        if (!derr) derr = std::current_exception();
                    }
                });
            for (auto& w : workers) w.join();
            if (derr) std::rethrow_exception(derr);
        }
    }

    auto compose_range = [&](std::size_t lo, std::size_t hi) {
        std::vector<DiffOp::Term> terms;
        for (std::size_t ip = lo; ip < hi; ++ip) {
            const auto& tp = P.terms()[ip];
            auto gammas = sub_indices(tp.alpha, N);
            for (std::size_t iq = 0; iq < Q.size(); ++iq) {
                const auto& tq = Q.terms()[iq];
                for (auto& gamma : gammas) {
                    if (tok && tok->is_cancelled()) throw OperationCancelled();
                    const CanonicalExpr& dg = qderivs[iq].at(gamma);
                    if (dg.is_zero()) continue;
                    MultiIndex idx;
                    for (int i = 0; i < N; ++i) {
                        int v = tp.alpha.d[i] - gamma.d[i] + tq.alpha.d[i];
                        idx.d[i] = static_cast<std::uint8_t>(v);
                    }
                    CanonicalExpr c = tp.coeff * dg;
                    Rational b = multi_binom(tp.alpha, gamma, N);
                    if (b != 1) c = c.scaled(b);
                    terms.push_back({idx, std::move(c)});
                }
            }
        }
        return DiffOp::make(N, std::move(terms));
    };

    const std::size_t work = P.size() * Q.size();
    int nthreads = compose_threads();
    if (work < 64 || nthreads <= 1) return compose_range(0, P.size());

    nthreads = std::min<std::size_t>(nthreads, P.size());
    std::vector<DiffOp> parts(nthreads);
    std::vector<std::thread> workers;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < nthreads; ++t) {
        std::size_t lo = P.size() * t / nthreads;
        std::size_t hi = P.size() * (t + 1) / nthreads;
        workers.emplace_back([&, lo, hi, t] {
            try {
                parts[t] = compose_range(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (err) std::rethrow_exception(err);
    DiffOp out = DiffOp::zero(N);
    for (auto& p : parts) out += p;
    return out;
}

DiffOp commutator(const DiffOp& P, const DiffOp& Q, const CancelToken* tok) {
    return compose(P, Q, tok) - compose(Q, P, tok);
}

DiffOp anticommutator(const DiffOp& P, const DiffOp& Q, const CancelToken* tok) {
    return compose(P, Q, tok) + compose(Q, P, tok);
}

DiffOp DiffOp::adjoint() const {
    const int N = n_;
    DiffOp acc = DiffOp::zero(N);
    for (auto& t : terms_) {
        // (c D^a)^T = (-1)^|a| D^a o conj(c)
        DiffOp d = DiffOp::partial(N, t.alpha);
        DiffOp c = DiffOp::from_coeff(t.coeff.conj());
        DiffOp prod = compose(d, c);
        if (t.alpha.order() % 2) prod = -prod;
        acc += prod;
    }
    return acc;
}

CanonicalExpr DiffOp::apply(const CanonicalExpr& f) const {
    if (f.dim() != n_) throw DimensionMismatch();
    CanonicalExpr acc = CanonicalExpr::zero(n_);
    for (auto& t : terms_) {
        CanonicalExpr g = f;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < t.alpha.d[i]; ++k) g = partial_derivative(g, Var::x(i));
        acc += t.coeff * g;
    }
    return acc;
}

std::string DiffOp::dump() const {
    std::ostringstream os;
    os << "DiffOp N=" << n_ << " terms=" << terms_.size() << "\n";
    for (auto& t : terms_) {
        os << "d^(";
        for (int i = 0; i < n_; ++i) {
            if (i) os << ",";
            os << int(t.alpha.d[i]);
        }
        os << ")\n" << t.coeff.dump();
    }
    return os.str();
}

}  // namespace kcn
