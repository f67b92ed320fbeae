#include "kcn/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "kcn/wavefunctions.hpp"

namespace kcn {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

bool write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) return false;
    os << content;
    return os.good();
}

namespace {

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = cfg.command;
    j["N"] = cfg.N;
    j["c0"] = cfg.c0;
    j["c1"] = cfg.c1;
    j["c2"] = cfg.c2;
    j["hbar"] = cfg.hbar;
    j["bracket_convention"] = cfg.bracket_convention;
    j["spectrum_convention"] = cfg.spectrum_convention;
    j["seed"] = cfg.seed;
    if (cfg.command == "spectrum") {
        j["levels"] = cfg.levels;
        j["I"] = cfg.I;
        j["tol_badge"] = cfg.tol_badge;
    }
    return j;
}

const char* verdict_str(VerificationReport::Verdict v) {
    switch (v) {
        case VerificationReport::Verdict::ExactPass:
            return "pass";
        case VerificationReport::Verdict::Residual:
            return "residual";
        case VerificationReport::Verdict::Fitted:
            return "fitted";
    }
    return "?";
}

ordered_json report_entry(const VerificationReport& r) {
    ordered_json e;
    e["id"] = r.id;
    e["verdict"] = verdict_str(r.verdict);
    ordered_json data;
    data["kind"] = r.kind == ObsKind::Classical ? "classical" : "quantum";
    data["N"] = r.N;
    data["pass"] = r.pass;
    if (r.verdict == VerificationReport::Verdict::Residual || !r.pass)
        data["residual_terms"] = r.residual_terms;
    if (!r.fitted.empty()) {
        ordered_json f;
        for (auto& [name, coeff] : r.fitted) f[name] = coeff;
        data["coefficients"] = f;
        data["underdetermined"] = r.underdetermined;
    }
    e["data"] = data;
    return e;
}

ordered_json errata_json(const std::vector<ErratumEntry>& errata) {
    ordered_json arr = ordered_json::array();
    for (auto& e : errata) {
        ordered_json j;
        j["key"] = e.key;
        j["location"] = e.location;
        j["printed"] = e.printed;
        j["finding"] = e.finding;
        j["evidence"] = e.evidence;
        if (!e.evidence_path.empty()) j["evidence_path"] = e.evidence_path;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace

std::string report_json(const RunConfig& cfg, const std::vector<VerificationReport>& reports,
                        const std::vector<ErratumEntry>& errata) {
    ordered_json j;
    j["run"] = config_json(cfg);
    ordered_json results = ordered_json::array();
    for (auto& r : reports) results.push_back(report_entry(r));
    j["results"] = results;
    j["errata"] = errata_json(errata);
    return j.dump(2) + "\n";
}

std::string report_text(const RunConfig& cfg, const std::vector<VerificationReport>& reports,
                        const std::vector<ErratumEntry>& errata) {
    std::ostringstream os;
    os << "# " << cfg.command << " N=" << cfg.N
       << " convention=" << cfg.bracket_convention << "\n";
    for (auto& r : reports) {
        os << r.id << " : " << verdict_str(r.verdict);
        if (r.verdict == VerificationReport::Verdict::Residual)
            os << " (" << r.residual_terms << " terms)";
        if (!r.fitted.empty()) {
            os << " {";
            bool first = true;
            for (auto& [n, c] : r.fitted) {
                if (!first) os << ", ";
                first = false;
                os << n << " = " << c;
            }
            os << "}" << (r.pass ? "" : " [self-validation FAILED]");
        }
        os << "  [" << fmt_double(r.wall_ms) << " ms]\n";
    }
    if (!errata.empty()) {
        os << "\n# errata\n";
        for (auto& e : errata) {
            os << e.key << "\n  location: " << e.location << "\n  printed:  " << e.printed
               << "\n  finding:  " << e.finding << "\n  evidence: " << e.evidence << "\n";
            if (!e.evidence_path.empty()) os << "  dump:     " << e.evidence_path << "\n";
        }
    }
    return os.str();
}

std::string spectrum_csv(const std::vector<SpectrumLine>& lines, bool printed_col) {
    std::ostringstream os;
    os << "n,I,E_formula,E_parabolic,E_algebraic,E_numeric,badge";
    if (printed_col) os << ",E_parabolic_printed";
    os << "\n";
    for (auto& L : lines) {
        os << L.n << "," << L.I << "," << fmt_double(L.E_formula) << ","
           << fmt_double(L.E_parabolic) << "," << fmt_double(L.E_algebraic) << ","
           << fmt_double(L.E_numeric) << "," << fmt_double(L.badge);
        if (printed_col) os << "," << fmt_double(L.E_parabolic_printed);
        os << "\n";
    }
    return os.str();
}

std::string spectrum_json(const RunConfig& cfg, const std::vector<SpectrumLine>& lines,
                          bool printed_col) {
    ordered_json j;
    j["run"] = config_json(cfg);
    ordered_json results = ordered_json::array();
    for (auto& L : lines) {
        ordered_json e;
        e["id"] = "spectrum.n" + std::to_string(L.n) + ".I" + std::to_string(L.I);
        bool ok = !std::isnan(L.badge) && L.badge < cfg.tol_badge;
        e["verdict"] = ok ? "pass" : "residual";
        ordered_json d;
        d["n"] = L.n;
        d["I"] = L.I;
        d["p"] = L.p;
        d["E_formula"] = fmt_double(L.E_formula);
        d["E_parabolic"] = fmt_double(L.E_parabolic);
        d["E_algebraic"] = fmt_double(L.E_algebraic);
        d["E_numeric"] = fmt_double(L.E_numeric);
        d["badge"] = fmt_double(L.badge);
        if (printed_col) d["E_parabolic_printed"] = fmt_double(L.E_parabolic_printed);
        e["data"] = d;
        results.push_back(e);
    }
    j["results"] = results;
    j["errata"] = ordered_json::array();
    return j.dump(2) + "\n";
}

std::string spectrum_text(const std::vector<SpectrumLine>& lines, bool printed_col) {
    std::ostringstream os;
    os << "  n  I   E_formula        E_parabolic      E_algebraic      E_numeric        badge";
    if (printed_col) os << "            E_par_printed";
    os << "\n";
    for (auto& L : lines) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%3d %2d   %-16.10g %-16.10g %-16.10g %-16.10g %-10.3g",
                      L.n, L.I, L.E_formula, L.E_parabolic, L.E_algebraic, L.E_numeric, L.badge);
        os << buf;
        if (printed_col) {
            std::snprintf(buf, sizeof(buf), "       %-16.10g", L.E_parabolic_printed);
            os << buf;
        }
        os << "\n";
    }
    return os.str();
}

std::vector<PhiProbePoint> phi_probe(const ModelParams& params, int I, int npoints,
                                     unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, 6.0), uu(-3.0, 3.0), uE(-2.0, -0.05);
    std::vector<PhiProbePoint> out;
    out.reserve(npoints);
    for (int i = 0; i < npoints; ++i) {
        PhiProbePoint pt;
        pt.x = ux(rng);
        pt.u = uu(rng);
        pt.E = uE(rng);
        pt.factorized_reconciled_m =
            phi(pt.x, pt.u, pt.E, params, I, PhiForm::Factorized, SpectrumConvention::Reconciled);
        pt.factorized_printed_m =
            phi(pt.x, pt.u, pt.E, params, I, PhiForm::Factorized, SpectrumConvention::AsPrinted);
        pt.expanded = phi(pt.x, pt.u, pt.E, params, I, PhiForm::Expanded);
        auto close = [](double a, double b) {
            return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
        };
        pt.match_reconciled = close(pt.factorized_reconciled_m, pt.expanded);
        pt.match_printed = close(pt.factorized_printed_m, pt.expanded);
        out.push_back(pt);
    }
    return out;
}

std::vector<ErratumEntry> build_erratum_ledger(const RunConfig& cfg) {
    std::vector<ErratumEntry> out;
    const bool write = !cfg.out_dir.empty();
    auto dump_path = [&](const std::string& name) {
        return cfg.out_dir + "/" + name + ".residual.txt";
    };

    ModelParams ref{.N = 3, .c0 = 1.0, .c1 = 0.1, .c2 = 0.2, .hbar = 1.0};

    // parabolic energy, factor 2
    {
        double printed = energy_parabolic(ref, 0, 0, 0, SpectrumConvention::AsPrinted);
        double rec = energy_parabolic(ref, 0, 0, 0, SpectrumConvention::Reconciled);
        double sph = energy_spherical(ref, 1, 0);
        RadialProblem pb;
        pb.params = ref;
        pb.A_eff = separation_constant_A(ref, 0, 0);
        double numeric = solve_radial(pb, 1).eigenvalues.at(0);
        ErratumEntry e;
        e.key = "Eq(2.43)/factor2";
        e.location = "parabolic-coordinates energy formula";
        e.printed = "E = -c0^2 / (hbar^2 {n1+n2+(delta1+delta2+2I+N-1)/2}^2)";
        e.finding =
            "under n = n1+n2+I+1 the printed value is twice the hyperspherical energy; the "
            "reconciled formula divides by 2 and matches the numeric eigensolver";
        e.evidence = "N=3, c=(1,0.1,0.2), n1=n2=I=0: printed " + fmt_double(printed) +
                     ", reconciled " + fmt_double(rec) + ", hyperspherical " + fmt_double(sph) +
                     ", oracle " + fmt_double(numeric);
        out.push_back(e);
    }

    // the two printed m formulas disagree with each other
    {
        MPrintedVariants mv = m_pair_printed_variants(ref, 0);
        MPair mrec = m_pair(ref, 0, SpectrumConvention::Reconciled);
        auto sol = solve_constraint_set(ref, 0, 1, 1, 1, 1, SpectrumConvention::Reconciled);
        ErratumEntry e;
        e.key = "m-formula/inconsistent";
        e.location = "deformed-oscillator section, m1/m2 definitions";
        e.printed =
            "hbar^2 m^2 = 16 c + (4 I(I+N-3) + (N-3)^2) hbar^2   vs   m = (3-2I-N-2 delta)/2";
        e.finding =
            "the two printed forms differ by a factor -2; only m = delta+I+(N-3)/2 makes the "
            "constraint-set energies equal the hyperspherical spectrum";
        e.evidence = "N=3, c1=0.1, I=0: radical form m1=" + fmt_double(mv.m1_radical) +
                     ", linear form m1=" + fmt_double(mv.m1_linear) +
                     ", reconciled m1=" + fmt_double(mrec.m1) +
                     "; reconciled Set-1 E(p=1)=" + fmt_double(sol.E) + " equals E_n(2)=" +
                     fmt_double(energy_spherical(ref, 2, 0));
        out.push_back(e);
    }

    // expanded Phi vs factorized Phi
    {
        auto probe = phi_probe(ref, 0, 20, cfg.seed);
        int match_rec = 0, match_pr = 0;
        std::ostringstream tbl;
        tbl << "x,u,E,factorized_reconciled_m,factorized_printed_m,expanded,match_reconciled,"
               "match_printed\n";
        for (auto& p : probe) {
            match_rec += p.match_reconciled;
            match_pr += p.match_printed;
            tbl << fmt_double(p.x) << "," << fmt_double(p.u) << "," << fmt_double(p.E) << ","
                << fmt_double(p.factorized_reconciled_m) << ","
                << fmt_double(p.factorized_printed_m) << "," << fmt_double(p.expanded) << ","
                << (p.match_reconciled ? "yes" : "no") << "," << (p.match_printed ? "yes" : "no")
                << "\n";
        }
        ErratumEntry e;
        e.key = "Phi(3.31)-vs-factorized";
        e.location = "structure function, expanded vs factorized form";
        e.printed = "expanded 6th-degree polynomial in 2(x+u)-1 vs product of six linear factors";
        e.finding = "per-point comparison at 20 seeded random (x,u,E) points; matches with the "
                    "radical-m convention: " +
                    std::to_string(match_pr) + "/20, with the reconciled m: " +
                    std::to_string(match_rec) + "/20";
        e.evidence = "N=3, c=(1,0.1,0.2), I=0, seed " + std::to_string(cfg.seed);
        if (write) {
            e.evidence_path = dump_path("phi_probe");
            write_file(e.evidence_path, tbl.str());
        }
        out.push_back(e);
    }

    // Set-1 u branch
    {
        auto printed = solve_constraint_set(ref, 0, 2, 1, 1, 1, SpectrumConvention::AsPrinted);
        auto rec = solve_constraint_set(ref, 0, 2, 1, 1, 1, SpectrumConvention::Reconciled);
        ErratumEntry e;
        e.key = "Set1-u/branch";
        e.location = "Set-1 solution of the representation constraints";
        e.printed = "u = 1/2 + c0/(hbar sqrt(-2E))";
        e.finding = "with the printed branch Phi(p+1) does not vanish; the -q branch satisfies "
                    "both constraints and is used in reconciled mode";
        e.evidence = "N=3, c=(1,0.1,0.2), I=0, p=2: printed-branch |Phi(p+1)|/scale = " +
                     fmt_double(printed.phip1_rel) + ", reconciled branch = " +
                     fmt_double(rec.phip1_rel);
        out.push_back(e);
    }

    // angular solution Jacobi superscripts
    {
        ModelParams m4{.N = 4, .c0 = 1.0, .c1 = 0.1, .c2 = 0.2, .hbar = 1.0};
        auto corrected = build_angular(m4, 2, 1, false);
        auto printed = build_angular(m4, 2, 1, true);
        double rc = angular_residual(corrected, m4, M_PI / 3);
        double rp = angular_residual(printed, m4, M_PI / 3);
        ErratumEntry e;
        e.key = "Eq(2.16)/jacobi-indices";
        e.location = "angular wave function in terms of Jacobi polynomials";
        e.printed = "P^(delta2+I, delta1+I)_{l-I}(cos phi)";
        e.finding = "the separated equation forces superscripts delta+I+(N-3)/2; the printed pair "
                    "only solves the equation at N=3";
        e.evidence = "N=4, c=(1,0.1,0.2), l=2, I=1, phi=pi/3: printed-index residual " +
                     fmt_double(rp) + ", corrected-index residual " + fmt_double(rc);
        out.push_back(e);
    }

    // classical observables: printed C and the bracket-definition sign
    {
        ModelParams sym{.N = 3};
        ClassicalObservables obs = build_classical(sym);
        CanonicalExpr Cstd = poisson_bracket(obs.A, obs.B, BracketConvention::Standard);
        CanonicalExpr Cpaper = poisson_bracket(obs.A, obs.B, BracketConvention::Paper);
        bool std_match = (Cstd == obs.C_printed);
        bool paper_match = (Cpaper == obs.C_printed);
        ErratumEntry e;
        e.key = "bracket-definition/sign";
        e.location = "Poisson bracket definition vs printed C and so(N-1) relations";
        e.printed = "{X,Y} = sum_j (dX/dp_j dY/dq_j - dX/dq_j dY/dp_j)";
        e.finding = "the printed C equals {A,B} under the opposite (standard) sign convention; "
                    "the printed definition gives -C";
        e.evidence = std::string("N=3 symbolic: printed C == {A,B}_standard: ") +
                     (std_match ? "yes" : "no") + ", printed C == {A,B}_printed-definition: " +
                     (paper_match ? "yes" : "no");
        out.push_back(e);
    }

    // quantum printed C: x_N vs x_j in the first double sum
    {
        ModelParams sym{.N = 3};
        QuantumObservables obs = build_quantum(sym);
        DiffOp C = commutator(obs.A, obs.B);
        DiffOp d1 = C - obs.C_printed;
        DiffOp d2 = C - obs.C_printed_xj;
        std::size_t t1 = 0, t2 = 0;
        for (auto& t : d1.terms()) t1 += t.coeff.size();
        for (auto& t : d2.terms()) t2 += t.coeff.size();
        ErratumEntry e;
        e.key = "Eq(3.25d)/xN-vs-xj";
        e.location = "printed quantum C, first double summation";
        e.printed = "-sum_{i,j} 2 i hbar x_i x_N p_i p_j p_N";
        e.finding = "[A,B] equals the printed C only with x_i x_j in the first summation, "
                    "matching the classical pattern";
        e.evidence = "N=3 symbolic: residual terms with x_N form " + std::to_string(t1) +
                     ", with x_j form " + std::to_string(t2);
        if (write && !d1.is_zero()) {
            e.evidence_path = dump_path("quantum_Cprinted_xN");
            write_file(e.evidence_path, d1.dump());
        }
        out.push_back(e);
    }

    // Runge-Lenz second printed form
    {
        ModelParams sym{.N = 3};
        QuantumObservables obs = build_quantum(sym);
        DiffOp diff = obs.MN - obs.MN_second_form;
        DiffOp hb2 = commutator(obs.H, -obs.MN_second_form +
                                            (obs.B + obs.MN));  // H with B built from 2nd form
        std::size_t td = 0;
        for (auto& t : diff.terms()) td += t.coeff.size();
        ErratumEntry e;
        e.key = "RungeLenz/second-form";
        e.location = "Runge-Lenz vector, second displayed form";
        e.printed = "M_j = -x_j(p^2/2 + H) + sum_i x_i p_i p_j - (N-1)/2 i hbar p_j - c0 x_j/r";
        e.finding = "the two displayed forms are not equal and the second form does not commute "
                    "with H; the first form is used for B";
        e.evidence = "N=3 symbolic: M(first) - M(second) has " + std::to_string(td) +
                     " residual terms; [H, B(second form)] is " +
                     (hb2.is_zero() ? "zero" : "nonzero");
        if (write && !diff.is_zero()) {
            e.evidence_path = dump_path("rungelenz_forms");
            write_file(e.evidence_path, diff.dump());
        }
        out.push_back(e);
    }

    // classical Casimir: J^2 term misses H
    {
        ModelParams sym{.N = 3};
        ClassicalObservables obs = build_classical(sym);
        CanonicalExpr C = poisson_bracket(obs.A, obs.B, BracketConvention::Standard);
        CanonicalExpr Kp = casimir_classical(obs, C, false);
        CanonicalExpr Kc = casimir_classical(obs, C, true);
        CanonicalExpr kbp = poisson_bracket(Kp, obs.B, BracketConvention::Standard);
        CanonicalExpr kbc = poisson_bracket(Kc, obs.B, BracketConvention::Standard);
        CanonicalExpr red = classical_casimir_reduction(obs);
        ErratumEntry e;
        e.key = "Eq(3.17)/J2-term";
        e.location = "classical Casimir of the quadratic Poisson algebra";
        e.printed = "K = C^2 + 4AB^2 - 8(c1-c2)c0 B - 8HA^2 + [16(c1+c2)H + 8J^2 - 4c0^2]A";
        e.finding = "the 8 J^2 A term must be 8 J^2 H A; only then {K,A} = {K,B} = 0 and the "
                    "printed central-element reduction holds";
        e.evidence = "N=3 symbolic: {K_printed, B} has " + std::to_string(kbp.size()) +
                     " residual terms, {K_corrected, B} has " + std::to_string(kbc.size()) +
                     "; K_corrected - reduction is " +
                     ((Kc - red).is_zero() ? "zero" : "nonzero");
        if (write && !kbp.is_zero()) {
            e.evidence_path = dump_path("classical_K_printed_B");
            write_file(e.evidence_path, kbp.dump());
        }
        out.push_back(e);
    }

    // quantum Casimir: (c1+c2) H^2 term should be H
    {
        ModelParams sym{.N = 3};
        QuantumObservables obs = build_quantum(sym);
        DiffOp C = commutator(obs.A, obs.B);
        DiffOp Kp = casimir_quantum(obs, C, false);
        DiffOp Kc = casimir_quantum(obs, C, true);
        DiffOp kbp = commutator(Kp, obs.B);
        DiffOp kbc = commutator(Kc, obs.B);
        DiffOp red = quantum_casimir_reduction(obs);
        std::size_t tp = 0, tc = 0;
        for (auto& t : kbp.terms()) tp += t.coeff.size();
        for (auto& t : kbc.terms()) tc += t.coeff.size();
        ErratumEntry e;
        e.key = "Eq(3.26)/H2-term";
        e.location = "quantum Casimir of Q(3)";
        e.printed = "... + 2[-4 hbar^2 J^2 H + (N-1)^2 hbar^4 H - 8 hbar^2(c1+c2)H^2 + 2 hbar^2 "
                    "c0^2]A";
        e.finding = "the (c1+c2)H^2 term must be (c1+c2)H, matching the [B,C] relation; only "
                    "then [K,B] = 0 and the printed reduction holds";
        e.evidence = "N=3 symbolic: [K_printed, B] has " + std::to_string(tp) +
                     " residual terms, [K_corrected, B] has " + std::to_string(tc) +
                     "; K_corrected - reduction is " +
                     ((Kc - red).is_zero() ? "zero" : "nonzero");
        if (write && !kbp.is_zero()) {
            e.evidence_path = dump_path("quantum_K_printed_B");
            write_file(e.evidence_path, kbp.dump());
        }
        out.push_back(e);
    }

    // parabolic separation-constant relation and E' normalization
    {
        ModelParams m = ref;
        auto sol = build_parabolic(m, 1, 0, 0);
        // printed back-solve: v = eps (n + (delta+I+(N-1)/2)/2), twice the working value
        ParabolicSolution printed = sol;
        printed.v1 = 2.0 * sol.v1;
        printed.v2 = 2.0 * sol.v2;
        double rp = parabolic_residual(printed, m, 1, 1.0);
        double rc = parabolic_residual(sol, m, 1, 1.0);
        ErratumEntry e;
        e.key = "Eq(2.40)/v-normalization";
        e.location = "parabolic separation constants and E' normalization";
        e.printed = "n_i = -(delta_i+I+(N-1)/2)/2 + v_i/eps with E' = -eps^2 and v2 = -v1 - c0'";
        e.finding = "the printed f_i solve the separated equations only with v_i/eps replaced by "
                    "2 v_i/eps (equivalently E' = -eps^2/8 as in the hyperspherical section) and "
                    "v1 + v2 = +c0'";
        e.evidence = "N=3, c=(1,0.1,0.2), n1=1, xi=1: printed back-solve residual " +
                     fmt_double(rp) + ", corrected " + fmt_double(rc) + "; v1+v2 = " +
                     fmt_double(sol.v1 + sol.v2) + " = c0' = " + fmt_double(1.0);
        out.push_back(e);
    }

    // printed radial normalization constant
    {
        ModelParams m = ref;
        auto R = build_radial(m, 2, 1, 0);
        auto nc = norm_check_radial(R, m);
        ErratumEntry e;
        e.key = "F_nl/normalization";
        e.location = "radial normalization constant";
        e.printed = "F_nl = 2(-c0')^{3/2}/(n+(d1+d2)/2)^2 * Gamma-ratio (negative base for c0>0)";
        e.finding = "(-c0')^{3/2} is read as |c0'|^{3/2}; the resulting constant does not "
                    "normalize R_nl, the quadrature-computed constant is reported";
        e.evidence = "N=3, c=(1,0.1,0.2), n=2, l=1: printed^2/computed^2 = " +
                     fmt_double(nc.ratio_printed_over_computed_sq) + " (printed " +
                     fmt_double(nc.printed_constant) + ", computed " +
                     fmt_double(nc.computed_constant) + ")";
        out.push_back(e);
    }

    return out;
}

}  // namespace kcn
