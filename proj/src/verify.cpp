#include "kcn/verify.hpp"

#include <chrono>
#include <sstream>

namespace kcn {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

VerificationReport report_zero(std::string id, ObsKind kind, int N, const CanonicalExpr& resid,
                               double ms) {
    VerificationReport r;
    r.id = std::move(id);
    r.kind = kind;
    r.N = N;
    r.wall_ms = ms;
    if (resid.is_zero()) {
        r.verdict = VerificationReport::Verdict::ExactPass;
        r.pass = true;
    } else {
        r.verdict = VerificationReport::Verdict::Residual;
        r.pass = false;
        r.residual_terms = resid.size();
        r.residual_dump = resid.dump();
    }
    return r;
}

VerificationReport report_zero(std::string id, ObsKind kind, int N, const DiffOp& resid,
                               double ms) {
    VerificationReport r;
    r.id = std::move(id);
    r.kind = kind;
    r.N = N;
    r.wall_ms = ms;
    if (resid.is_zero()) {
        r.verdict = VerificationReport::Verdict::ExactPass;
        r.pass = true;
    } else {
        r.verdict = VerificationReport::Verdict::Residual;
        r.pass = false;
        std::size_t terms = 0;
        for (auto& t : resid.terms()) terms += t.coeff.size();
        r.residual_terms = terms;
        r.residual_dump = resid.dump();
    }
    return r;
}

template <typename T, typename BracketFn>
VerificationReport bracket_zero_report(std::string id, ObsKind kind, int N, BracketFn&& br,
                                       const T& f, const T& g) {
    auto t0 = Clock::now();
    T resid = br(f, g);
    return report_zero(std::move(id), kind, N, resid, ms_since(t0));
}

std::string lij(int i, int j) { return "L" + std::to_string(i + 1) + std::to_string(j + 1); }

VerificationReport fit_report(std::string id, ObsKind kind, int N, const FitResult& fr,
                              const std::vector<std::string>& names, double ms) {
    VerificationReport r;
    r.id = std::move(id);
    r.kind = kind;
    r.N = N;
    r.wall_ms = ms;
    r.verdict = VerificationReport::Verdict::Fitted;
    r.pass = fr.success;
    r.underdetermined = fr.underdetermined;
    for (std::size_t k = 0; k < fr.coeffs.size(); ++k)
        r.fitted.push_back({names[k], fr.coeffs[k].to_string()});
    if (!fr.success) {
        if (fr.residual_expr) {
            r.residual_terms = fr.residual_expr->size();
            r.residual_dump = fr.residual_expr->dump();
        } else if (fr.residual_op) {
            for (auto& t : fr.residual_op->terms()) r.residual_terms += t.coeff.size();
            r.residual_dump = fr.residual_op->dump();
        }
    }
    return r;
}

ParamPoly pgen(Param g) { return ParamPoly::gen(g); }

}  // namespace

bool all_pass(const std::vector<VerificationReport>& reports) {
    for (auto& r : reports)
        if (!r.pass) return false;
    return true;
}

bool any_residual(const std::vector<VerificationReport>& reports) {
    for (auto& r : reports)
        if (!r.pass) return true;
    return false;
}

std::vector<VerificationReport> check_conservation(const ClassicalObservables& obs,
                                                   BracketConvention conv) {
    const int N = obs.N;
    auto br = [&](const CanonicalExpr& f, const CanonicalExpr& g) {
        return poisson_bracket(f, g, conv);
    };
    std::vector<VerificationReport> out;
    out.push_back(bracket_zero_report("conservation.HA", ObsKind::Classical, N, br, obs.H, obs.A));
    out.push_back(bracket_zero_report("conservation.HB", ObsKind::Classical, N, br, obs.H, obs.B));
    out.push_back(bracket_zero_report("conservation.HJ2", ObsKind::Classical, N, br, obs.H, obs.J2));
    out.push_back(bracket_zero_report("conservation.AJ2", ObsKind::Classical, N, br, obs.A, obs.J2));
    out.push_back(bracket_zero_report("conservation.BJ2", ObsKind::Classical, N, br, obs.B, obs.J2));
    for (int i = 0; i < N - 1; ++i)
        for (int j = i + 1; j < N - 1; ++j) {
            const CanonicalExpr& L = obs.L.at({i, j});
            out.push_back(bracket_zero_report("conservation.H" + lij(i, j), ObsKind::Classical, N,
                                              br, obs.H, L));
            out.push_back(bracket_zero_report("conservation.A" + lij(i, j), ObsKind::Classical, N,
                                              br, obs.A, L));
            out.push_back(bracket_zero_report("conservation.B" + lij(i, j), ObsKind::Classical, N,
                                              br, obs.B, L));
            out.push_back(bracket_zero_report("conservation." + lij(i, j) + "J2",
                                              ObsKind::Classical, N, br, L, obs.J2));
        }
    return out;
}

std::vector<VerificationReport> check_conservation(const QuantumObservables& obs,
                                                   const CancelToken* tok) {
    const int N = obs.N;
    auto br = [&](const DiffOp& f, const DiffOp& g) { return commutator(f, g, tok); };
    std::vector<VerificationReport> out;
    out.push_back(bracket_zero_report("conservation.HA", ObsKind::Quantum, N, br, obs.H, obs.A));
    out.push_back(bracket_zero_report("conservation.HB", ObsKind::Quantum, N, br, obs.H, obs.B));
    out.push_back(bracket_zero_report("conservation.HJ2", ObsKind::Quantum, N, br, obs.H, obs.J2));
    out.push_back(bracket_zero_report("conservation.AJ2", ObsKind::Quantum, N, br, obs.A, obs.J2));
    out.push_back(bracket_zero_report("conservation.BJ2", ObsKind::Quantum, N, br, obs.B, obs.J2));
    for (int i = 0; i < N - 1; ++i)
        for (int j = i + 1; j < N - 1; ++j) {
            const DiffOp& L = obs.L.at({i, j});
            out.push_back(
                bracket_zero_report("conservation.H" + lij(i, j), ObsKind::Quantum, N, br, obs.H, L));
            out.push_back(
                bracket_zero_report("conservation.A" + lij(i, j), ObsKind::Quantum, N, br, obs.A, L));
            out.push_back(
                bracket_zero_report("conservation.B" + lij(i, j), ObsKind::Quantum, N, br, obs.B, L));
            out.push_back(bracket_zero_report("conservation." + lij(i, j) + "J2", ObsKind::Quantum,
                                              N, br, L, obs.J2));
        }
    return out;
}

std::vector<VerificationReport> check_so_relations(const ClassicalObservables& obs,
                                                   BracketConvention conv) {
    const int N = obs.N;
    std::vector<VerificationReport> out;
    auto Lg = [&](int i, int j) -> CanonicalExpr {
        if (i == j) return CanonicalExpr::zero(N);
        if (i < j) return obs.L.at({i, j});
        return -obs.L.at({j, i});
    };
    // printed pattern: {L_ij,L_kl} = d_ik L_jl + d_jl L_ik - d_il L_jk - d_jk L_il
    for (int i = 0; i < N - 1; ++i)
        for (int j = i + 1; j < N - 1; ++j)
            for (int k = 0; k < N - 1; ++k)
                for (int l = k + 1; l < N - 1; ++l) {
                    if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
                    auto t0 = Clock::now();
                    CanonicalExpr lhs = poisson_bracket(Lg(i, j), Lg(k, l), conv);
                    CanonicalExpr rhs = CanonicalExpr::zero(N);
                    if (i == k) rhs += Lg(j, l);
                    if (j == l) rhs += Lg(i, k);
                    if (i == l) rhs -= Lg(j, k);
                    if (j == k) rhs -= Lg(i, l);
                    out.push_back(report_zero("so." + lij(i, j) + lij(k, l), ObsKind::Classical, N,
                                              lhs - rhs, ms_since(t0)));
                }
    return out;
}

std::vector<VerificationReport> check_so_relations(const QuantumObservables& obs,
                                                   const CancelToken* tok) {
    const int N = obs.N;
    std::vector<VerificationReport> out;
    auto Lg = [&](int i, int j) -> DiffOp {
        if (i == j) return DiffOp::zero(N);
        if (i < j) return obs.L.at({i, j});
        return -obs.L.at({j, i});
    };
    ParamPoly ihbar = ParamPoly::term(Rational(1), {{Param::I, 1}, {Param::Hbar, 1}});
    // [L_ij,L_kl] = i hbar (d_ik L_jl + d_jl L_ik - d_il L_jk - d_jk L_il)
    for (int i = 0; i < N - 1; ++i)
        for (int j = i + 1; j < N - 1; ++j)
            for (int k = 0; k < N - 1; ++k)
                for (int l = k + 1; l < N - 1; ++l) {
                    if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
                    auto t0 = Clock::now();
                    DiffOp lhs = commutator(Lg(i, j), Lg(k, l), tok);
                    DiffOp rhs = DiffOp::zero(N);
                    if (i == k) rhs += Lg(j, l);
                    if (j == l) rhs += Lg(i, k);
                    if (i == l) rhs -= Lg(j, k);
                    if (j == k) rhs -= Lg(i, l);
                    out.push_back(report_zero("so." + lij(i, j) + lij(k, l), ObsKind::Quantum, N,
                                              lhs - rhs.scaled(ihbar), ms_since(t0)));
                }
    return out;
}

ClassicalSuiteResult run_classical_suite(int N, const SuiteOptions& opt) {
    ModelParams params;
    params.N = N;
    ClassicalObservables obs = build_classical(params);
    ClassicalSuiteResult res{.reports = {}, .C = CanonicalExpr::zero(N)};
    const BracketConvention conv = opt.convention;

    auto cons = check_conservation(obs, conv);
    res.reports.insert(res.reports.end(), cons.begin(), cons.end());
    auto so = check_so_relations(obs, conv);
    res.reports.insert(res.reports.end(), so.begin(), so.end());

    CanonicalExpr c0 = CanonicalExpr::constant(N, pgen(Param::C0));
    CanonicalExpr c1 = CanonicalExpr::constant(N, pgen(Param::C1));
    CanonicalExpr c2 = CanonicalExpr::constant(N, pgen(Param::C2));

    // C := {A,B}; quadratic relations
    auto t0 = Clock::now();
    CanonicalExpr C = poisson_bracket(obs.A, obs.B, conv, opt.token);
    res.C = C;
    res.reports.push_back(
        report_zero("classical.kf7.Cprinted", ObsKind::Classical, N, C - obs.C_printed, ms_since(t0)));

    t0 = Clock::now();
    CanonicalExpr AC = poisson_bracket(obs.A, C, conv, opt.token);
    CanonicalExpr rhs2 = (obs.A * obs.B).scaled(Rational(-4)) + ((c1 - c2) * c0).scaled(Rational(4));
    res.reports.push_back(report_zero("classical.kf2", ObsKind::Classical, N, AC - rhs2, ms_since(t0)));

    t0 = Clock::now();
    CanonicalExpr BC = poisson_bracket(obs.B, C, conv, opt.token);
    CanonicalExpr rhs3 = (obs.B * obs.B).scaled(Rational(2)) - (obs.H * obs.A).scaled(Rational(8)) +
                         (obs.J2 * obs.H).scaled(Rational(4)) +
                         ((c1 + c2) * obs.H).scaled(Rational(8)) - (c0 * c0).scaled(Rational(2));
    res.reports.push_back(report_zero("classical.kf3", ObsKind::Classical, N, BC - rhs3, ms_since(t0)));

    if (opt.with_fits) {
        t0 = Clock::now();
        FitResult f1 = fit_linear_combination(
            AC, {obs.A * obs.B, obs.B, obs.A, CanonicalExpr::rational(N, Rational(1))});
        res.reports.push_back(fit_report("fit.classical.AC", ObsKind::Classical, N, f1,
                                         {"A*B", "B", "A", "1"}, ms_since(t0)));
        t0 = Clock::now();
        FitResult f2 = fit_linear_combination(
            BC, {obs.B * obs.B, obs.H * obs.A, obs.J2 * obs.H, obs.H,
                 CanonicalExpr::rational(N, Rational(1))});
        res.reports.push_back(fit_report("fit.classical.BC", ObsKind::Classical, N, f2,
                                         {"B^2", "H*A", "J2*H", "H", "1"}, ms_since(t0)));
    }

    if (opt.with_casimir) {
        CanonicalExpr red = classical_casimir_reduction(obs);
        for (bool corrected : {true, false}) {
            if (!corrected &&
                (!opt.printed_casimir_variants || N > opt.printed_casimir_max_n))
                continue;
            const char* tag = corrected ? "corrected" : "printed";
            t0 = Clock::now();
            CanonicalExpr K = casimir_classical(obs, C, corrected);
            CanonicalExpr ka = poisson_bracket(K, obs.A, conv, opt.token);
            res.reports.push_back(report_zero(std::string("classical.kf4.central.A.") + tag,
                                              ObsKind::Classical, N, ka, ms_since(t0)));
            t0 = Clock::now();
            CanonicalExpr kb = poisson_bracket(K, obs.B, conv, opt.token);
            res.reports.push_back(report_zero(std::string("classical.kf4.central.B.") + tag,
                                              ObsKind::Classical, N, kb, ms_since(t0)));
            t0 = Clock::now();
            CanonicalExpr kr = K - red;
            res.reports.push_back(report_zero(std::string("classical.reduction.") + tag,
                                              ObsKind::Classical, N, kr, ms_since(t0)));
        }
    }
    return res;
}

QuantumSuiteResult run_quantum_suite(int N, const SuiteOptions& opt) {
    ModelParams params;
    params.N = N;
    QuantumObservables obs = build_quantum(params);
    QuantumSuiteResult res{.reports = {}, .C = DiffOp::zero(N)};
    const CancelToken* tok = opt.token;

    // the two printed Runge-Lenz forms
    {
        auto t0 = Clock::now();
        res.reports.push_back(report_zero("quantum.rungelenz.forms", ObsKind::Quantum, N,
                                          obs.MN - obs.MN_second_form, ms_since(t0)));
    }

    auto cons = check_conservation(obs, tok);
    res.reports.insert(res.reports.end(), cons.begin(), cons.end());
    auto so = check_so_relations(obs, tok);
    res.reports.insert(res.reports.end(), so.begin(), so.end());

    ParamPoly h2 = ParamPoly::gen(Param::Hbar, 2);
    ParamPoly h4 = ParamPoly::gen(Param::Hbar, 4);
    ParamPoly c0 = pgen(Param::C0), c1 = pgen(Param::C1), c2 = pgen(Param::C2);

    auto t0 = Clock::now();
    DiffOp C = commutator(obs.A, obs.B, tok);
    res.C = C;
    res.reports.push_back(
        report_zero("quantum.pr3.Cprinted", ObsKind::Quantum, N, C - obs.C_printed, ms_since(t0)));
    t0 = Clock::now();
    res.reports.push_back(report_zero("quantum.pr3.Cprinted_xj", ObsKind::Quantum, N,
                                      C - obs.C_printed_xj, ms_since(t0)));

    t0 = Clock::now();
    DiffOp AC = commutator(obs.A, C, tok);
    DiffOp rhsA = anticommutator(obs.A, obs.B, tok).scaled(h2.scaled(Rational(2)));
    rhsA += obs.B.scaled(h4.scaled(Rational((N - 1) * (N - 3))));
    rhsA += DiffOp::identity(N).scaled((c1 - c2).scaled(Rational(-4)) * h2 * c0);
    res.reports.push_back(report_zero("quantum.prova6", ObsKind::Quantum, N, AC - rhsA, ms_since(t0)));

    t0 = Clock::now();
    DiffOp BC = commutator(obs.B, C, tok);
    DiffOp rhsB = compose(obs.B, obs.B, tok).scaled(h2.scaled(Rational(-2)));
    rhsB += compose(obs.H, obs.A, tok).scaled(h2.scaled(Rational(8)));
    rhsB += compose(obs.J2, obs.H, tok).scaled(h2.scaled(Rational(-4)));
    rhsB += obs.H.scaled(h4.scaled(Rational((N - 1) * (N - 1))));
    rhsB += obs.H.scaled(h2.scaled(Rational(-8)) * (c1 + c2));
    rhsB += DiffOp::identity(N).scaled(h2.scaled(Rational(2)) * c0 * c0);
    res.reports.push_back(report_zero("quantum.prova1", ObsKind::Quantum, N, BC - rhsB, ms_since(t0)));

    if (opt.with_fits) {
        t0 = Clock::now();
        FitResult f1 = fit_linear_combination(
            AC, {anticommutator(obs.A, obs.B, tok), obs.B, obs.A, DiffOp::identity(N)});
        res.reports.push_back(fit_report("fit.quantum.AC", ObsKind::Quantum, N, f1,
                                         {"{A,B}", "B", "A", "1"}, ms_since(t0)));
        t0 = Clock::now();
        FitResult f2 = fit_linear_combination(
            BC, {compose(obs.B, obs.B, tok), compose(obs.H, obs.A, tok),
                 compose(obs.J2, obs.H, tok), obs.H, DiffOp::identity(N)});
        res.reports.push_back(fit_report("fit.quantum.BC", ObsKind::Quantum, N, f2,
                                         {"B^2", "H*A", "J2*H", "H", "1"}, ms_since(t0)));
    }

    if (opt.with_casimir) {
        DiffOp red = quantum_casimir_reduction(obs);
        for (bool corrected : {true, false}) {
            if (!corrected &&
                (!opt.printed_casimir_variants || N > opt.printed_casimir_max_n))
                continue;
            const char* tag = corrected ? "corrected" : "printed";
            auto tK = Clock::now();
            DiffOp K = casimir_quantum(obs, C, corrected, tok);
            DiffOp ka = commutator(K, obs.A, tok);
            res.reports.push_back(report_zero(std::string("quantum.prova4.central.A.") + tag,
                                              ObsKind::Quantum, N, ka, ms_since(tK)));
            tK = Clock::now();
            DiffOp kb = commutator(K, obs.B, tok);
            res.reports.push_back(report_zero(std::string("quantum.prova4.central.B.") + tag,
                                              ObsKind::Quantum, N, kb, ms_since(tK)));
            tK = Clock::now();
            DiffOp kr = K - red;
            res.reports.push_back(report_zero(std::string("quantum.prova3.reduction.") + tag,
                                              ObsKind::Quantum, N, kr, ms_since(tK)));
        }
    }
    return res;
}

}  // namespace kcn
