#include "kcn/fit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kcn {

namespace {

using FlatKey = std::pair<MultiIndex, VarMono>;
using Flat = std::map<FlatKey, ParamPoly>;

// mu with mu * pb == pt in the i-reduced ring, if it exists
std::optional<ParamExp> quotient_exp(const ParamExp& pt, const ParamExp& pb) {
    ParamExp mu;
    mu.e[0] = static_cast<std::uint8_t>((pt.e[0] + 2 - pb.e[0]) % 2);
    for (int k = 1; k < kNumParams; ++k) {
        if (pt.e[k] < pb.e[k]) return std::nullopt;
        mu.e[k] = static_cast<std::uint8_t>(pt.e[k] - pb.e[k]);
    }
    return mu;
}

ParamPoly mono_poly(const ParamExp& e) {
    ParamPoly p = ParamPoly::one();
    static const Param gens[kNumParams] = {Param::I, Param::Hbar, Param::C0, Param::C1,
                                           Param::C2};
    for (int k = 0; k < kNumParams; ++k)
        if (e.e[k]) p = p * ParamPoly::gen(gens[k], e.e[k]);
    return p;
}

struct LinearSolution {
    bool consistent = true;
    bool underdetermined = false;
    std::vector<ParamPoly> lambdas;  // one per basis element
};

LinearSolution solve_flat(const Flat& target, const std::vector<Flat>& basis) {
    const std::size_t K = basis.size();

    // candidate parameter-monomials per basis element
    std::vector<std::vector<ParamExp>> cand(K);
    for (std::size_t k = 0; k < K; ++k) {
        std::set<ParamExp> mus;
        mus.insert(ParamExp{});
        for (auto& [key, bp] : basis[k]) {
            auto it = target.find(key);
            if (it == target.end()) continue;
            for (auto& [pb, qb] : bp.terms())
                for (auto& [pt, qt] : it->second.terms())
                    if (auto mu = quotient_exp(pt, pb)) mus.insert(*mu);
        }
        cand[k].assign(mus.begin(), mus.end());
    }

    // column layout
    std::vector<std::pair<std::size_t, ParamExp>> cols;
    for (std::size_t k = 0; k < K; ++k)
        for (auto& mu : cand[k]) cols.push_back({k, mu});
    const std::size_t C = cols.size();

    // equations indexed by (key, param monomial)
    std::map<std::pair<FlatKey, ParamExp>, std::vector<Rational>> rows;
    auto row_of = [&](const FlatKey& key, const ParamExp& pe) -> std::vector<Rational>& {
        auto it = rows.find({key, pe});
        if (it == rows.end())
            it = rows.emplace(std::make_pair(key, pe), std::vector<Rational>(C + 1, Rational(0)))
                     .first;
        return it->second;
    };
    for (std::size_t c = 0; c < C; ++c) {
        auto& [k, mu] = cols[c];
        ParamPoly mup = mono_poly(mu);
        for (auto& [key, bp] : basis[k]) {
            ParamPoly prod = mup * bp;
            for (auto& [pe, q] : prod.terms()) row_of(key, pe)[c] += q;
        }
    }
    for (auto& [key, tp] : target)
        for (auto& [pe, q] : tp.terms()) row_of(key, pe)[C] = q;

    // exact Gaussian elimination, rows streamed in deterministic order
    std::vector<std::vector<Rational>> pivots;  // row with leading 1 at pivot_col
    std::vector<std::size_t> pivot_col;
    bool consistent = true;
    for (auto& [idx, row0] : rows) {
        std::vector<Rational> row = row0;
        for (std::size_t p = 0; p < pivots.size(); ++p) {
            const Rational& f = row[pivot_col[p]];
            if (sgn(f) == 0) continue;
            Rational fac = f;
            for (std::size_t c = 0; c <= C; ++c)
                if (sgn(pivots[p][c]) != 0) row[c] -= fac * pivots[p][c];
        }
        std::size_t lead = C;
        for (std::size_t c = 0; c < C; ++c)
            if (sgn(row[c]) != 0) {
                lead = c;
                break;
            }
        if (lead == C) {
            if (sgn(row[C]) != 0) consistent = false;
            continue;
        }
        Rational inv = Rational(1) / row[lead];
        for (std::size_t c = 0; c <= C; ++c) row[c] *= inv;
        pivots.push_back(std::move(row));
        pivot_col.push_back(lead);
    }
    // back-substitute to reduced form
    for (std::size_t p = pivots.size(); p-- > 0;) {
        for (std::size_t q = 0; q < p; ++q) {
            Rational f = pivots[q][pivot_col[p]];
            if (sgn(f) == 0) continue;
            for (std::size_t c = 0; c <= C; ++c)
                if (sgn(pivots[p][c]) != 0) pivots[q][c] -= f * pivots[p][c];
        }
    }

    LinearSolution sol;
    sol.consistent = consistent;
    sol.underdetermined = pivots.size() < C;
    sol.lambdas.assign(basis.size(), ParamPoly::zero());
    std::vector<Rational> x(C, Rational(0));
    for (std::size_t p = 0; p < pivots.size(); ++p) x[pivot_col[p]] = pivots[p][C];
    for (std::size_t c = 0; c < C; ++c) {
        if (sgn(x[c]) == 0) continue;
        auto& [k, mu] = cols[c];
        sol.lambdas[k] += mono_poly(mu).scaled(x[c]);
    }
    return sol;
}

Flat flatten(const CanonicalExpr& e, const DenExp& dmax) {
    Flat f;
    for (auto& t : e.numerator_for_den(dmax)) f[{MultiIndex{}, t.mono}] = t.coeff;
    return f;
}

}  // namespace

FitResult fit_linear_combination(const CanonicalExpr& target,
                                 const std::vector<CanonicalExpr>& basis) {
    DenExp dmax = target.den();
    for (auto& b : basis) {
        dmax.a = std::max(dmax.a, b.den().a);
        dmax.b = std::max(dmax.b, b.den().b);
        dmax.c = std::max(dmax.c, b.den().c);
    }
    Flat tf = flatten(target, dmax);
    std::vector<Flat> bf;
    bf.reserve(basis.size());
    for (auto& b : basis) bf.push_back(flatten(b, dmax));

    LinearSolution sol = solve_flat(tf, bf);
    FitResult res;
    res.coeffs = sol.lambdas;
    res.underdetermined = sol.underdetermined;
    CanonicalExpr recon = CanonicalExpr::zero(target.dim());
    for (std::size_t k = 0; k < basis.size(); ++k) recon += basis[k].scaled(sol.lambdas[k]);
    CanonicalExpr resid = target - recon;
    res.success = sol.consistent && resid.is_zero();
    if (!res.success) res.residual_expr = resid;
    return res;
}

FitResult fit_linear_combination(const DiffOp& target, const std::vector<DiffOp>& basis) {
    std::map<MultiIndex, DenExp> dmax;
    auto grow = [&](const DiffOp& op) {
        for (auto& t : op.terms()) {
            DenExp& d = dmax[t.alpha];
            d.a = std::max(d.a, t.coeff.den().a);
            d.b = std::max(d.b, t.coeff.den().b);
            d.c = std::max(d.c, t.coeff.den().c);
        }
    };
    grow(target);
    for (auto& b : basis) grow(b);
    auto flatten_op = [&](const DiffOp& op) {
        Flat f;
        for (auto& t : op.terms())
            for (auto& pt : t.coeff.numerator_for_den(dmax[t.alpha]))
                f[{t.alpha, pt.mono}] = pt.coeff;
        return f;
    };
    Flat tf = flatten_op(target);
    std::vector<Flat> bf;
    bf.reserve(basis.size());
    for (auto& b : basis) bf.push_back(flatten_op(b));

    LinearSolution sol = solve_flat(tf, bf);
    FitResult res;
    res.coeffs = sol.lambdas;
    res.underdetermined = sol.underdetermined;
    DiffOp recon = DiffOp::zero(target.dim());
    for (std::size_t k = 0; k < basis.size(); ++k) recon += basis[k].scaled(sol.lambdas[k]);
    DiffOp resid = target - recon;
    res.success = sol.consistent && resid.is_zero();
    if (!res.success) res.residual_op = resid;
    return res;
}

}  // namespace kcn
