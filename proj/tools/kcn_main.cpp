// kcn: verification and spectrum toolkit for the N-dimensional non-central
// Kepler-Coulomb system. Subcommands: verify, spectrum, wavecheck, erratum.
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "kcn/report.hpp"
#include "kcn/wavefunctions.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitToolFailure = 1;
constexpr int kExitErratum = 2;
constexpr int kExitFallToCenter = 3;
constexpr int kExitUsage = 64;

using namespace kcn;

void emit(const RunConfig& cfg, const std::string& content, const std::string& filename) {
    std::cout << content;
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        write_file(cfg.out_dir + "/" + filename, content);
    }
}

void write_residual_dumps(const RunConfig& cfg, std::vector<VerificationReport>& reports) {
    if (cfg.out_dir.empty()) return;
    for (auto& r : reports) {
        if (r.pass || r.residual_dump.empty()) continue;
        std::string id = r.id;
        for (auto& ch : id)
            if (ch == '/' || ch == ' ') ch = '_';
        write_file(cfg.out_dir + "/" + id + ".residual.txt", r.residual_dump);
    }
}

int cmd_verify(RunConfig cfg, const std::string& kind, bool fits, bool casimir,
               bool printed_variants, int printed_casimir_max_n) {
    if (cfg.N < 3 || cfg.N > 6) {
        std::cerr << "verify: --n must be between 3 and 6\n";
        return kExitUsage;
    }
    std::vector<VerificationReport> reports;
    SuiteOptions opt;
    opt.with_fits = fits;
    opt.with_casimir = casimir;
    opt.printed_casimir_variants = printed_variants;
    opt.printed_casimir_max_n = printed_casimir_max_n;

    auto add_suffixed = [&](std::vector<VerificationReport>&& rs, const std::string& suffix) {
        for (auto& r : rs) {
            if (!suffix.empty()) r.id += "." + suffix;
            reports.push_back(std::move(r));
        }
    };

    if (kind == "classical") {
        if (cfg.bracket_convention == "both") {
            opt.convention = BracketConvention::Standard;
            add_suffixed(std::move(run_classical_suite(cfg.N, opt).reports), "standard");
            opt.convention = BracketConvention::Paper;
            add_suffixed(std::move(run_classical_suite(cfg.N, opt).reports), "paper");
        } else {
            opt.convention = cfg.bracket_convention == "paper" ? BracketConvention::Paper
                                                               : BracketConvention::Standard;
            add_suffixed(std::move(run_classical_suite(cfg.N, opt).reports), "");
        }
    } else {
        add_suffixed(std::move(run_quantum_suite(cfg.N, opt).reports), "");
    }

    write_residual_dumps(cfg, reports);
    std::string content = cfg.format == "json" ? report_json(cfg, reports, {})
                                               : report_text(cfg, reports, {});
    emit(cfg, content, "verify_" + kind + "_n" + std::to_string(cfg.N) +
                           (cfg.format == "json" ? ".json" : ".txt"));
    return all_pass(reports) ? kExitOk : kExitErratum;
}

int cmd_spectrum(RunConfig cfg, const ModelParams& params) {
    bool printed_col = cfg.spectrum_convention == "as-printed";
    auto lines = compare_spectrum(params, cfg.I, cfg.levels, printed_col);
    std::string content;
    if (cfg.format == "json")
        content = spectrum_json(cfg, lines, printed_col);
    else if (cfg.format == "csv")
        content = spectrum_csv(lines, printed_col);
    else
        content = spectrum_text(lines, printed_col);
    emit(cfg, content,
         "spectrum_n" + std::to_string(cfg.N) + "_I" + std::to_string(cfg.I) +
             (cfg.format == "json" ? ".json" : cfg.format == "csv" ? ".csv" : ".txt"));
    for (auto& L : lines)
        if (std::isnan(L.badge) || L.badge >= cfg.tol_badge) return kExitErratum;
    return kExitOk;
}

int cmd_wavecheck(RunConfig cfg, const ModelParams& params, const std::string& which, int n,
                  int l, int I, int n1, int n2) {
    std::ostringstream os;
    double worst = 0;
    auto record = [&](const std::string& label, double x, double resid) {
        worst = std::max(worst, resid);
        os << label << " at " << fmt_double(x) << " : residual " << fmt_double(resid) << "\n";
    };
    if (which == "radial") {
        if (n <= l || l < I) {
            std::cerr << "wavecheck: need n >= l+1 and l >= I\n";
            return kExitUsage;
        }
        auto sol = build_radial(params, n, l, I);
        for (double r : {0.5, 1.0, 2.0, 5.0}) record("radial", r, radial_residual(sol, params, r));
        auto nc = norm_check_radial(sol, params);
        os << "norm: integral of R^2 r^(N-1) = " << fmt_double(nc.norm_sq)
           << " (printed constant " << fmt_double(nc.printed_constant) << ", computed "
           << fmt_double(nc.computed_constant) << ")\n";
        os << "nodes expected " << (n - l - 1) << "\n";
    } else if (which == "angular") {
        if (l < I) {
            std::cerr << "wavecheck: need l >= I\n";
            return kExitUsage;
        }
        auto sol = build_angular(params, l, I);
        for (double phi : {0.4, M_PI / 3, 1.3, 2.2, 2.8})
            record("angular", phi, angular_residual(sol, params, phi));
        auto nc = norm_check_angular(sol, params);
        os << "norm: integral of Theta^2 sin^(N-2) = " << fmt_double(nc.norm_sq)
           << " (printed constant " << fmt_double(nc.printed_constant) << ", computed "
           << fmt_double(nc.computed_constant) << ")\n";
    } else if (which == "parabolic") {
        if (n1 < 0 || n2 < 0) {
            std::cerr << "wavecheck: need n1, n2 >= 0\n";
            return kExitUsage;
        }
        auto sol = build_parabolic(params, n1, n2, I);
        for (double t : {0.5, 1.0, 2.0}) {
            record("parabolic f1", t, parabolic_residual(sol, params, 1, t));
            record("parabolic f2", t, parabolic_residual(sol, params, 2, t));
        }
    } else {
        std::cerr << "wavecheck: --which must be angular|radial|parabolic\n";
        return kExitUsage;
    }
    os << "worst residual: " << fmt_double(worst) << " (tolerance " << fmt_double(cfg.tol_residual)
       << ")\n";
    emit(cfg, os.str(), "wavecheck_" + which + ".txt");
    return worst < cfg.tol_residual ? kExitOk : kExitErratum;
}

int cmd_erratum(RunConfig cfg) {
    auto errata = build_erratum_ledger(cfg);
    std::string content = cfg.format == "json" ? report_json(cfg, {}, errata)
                                               : report_text(cfg, {}, errata);
    emit(cfg, content, std::string("erratum") + (cfg.format == "json" ? ".json" : ".txt"));
    return errata.empty() ? kExitOk : kExitErratum;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for the N-dimensional non-central Kepler-Coulomb system"};
    app.require_subcommand(1);
    // plain key=value lines; subcommand options use dotted keys, e.g.
    // "spectrum.levels=3". Flags always override the file.
    app.set_config("--config", "", "configuration file (key=value lines)");

    RunConfig cfg;
    cfg.bracket_convention = "standard";
    std::string kind = "classical", which = "radial";
    std::string c0s = "1", c1s = "0", c2s = "0", hbars = "1";
    int n = 1, l = 0, I = 0, n1 = 0, n2 = 0;
    bool fits = true, casimir = true, printed_variants = false;
    int printed_casimir_max_n = 3;
    int threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "json|csv|text")->default_str("text");
        sub->add_option("--out", cfg.out_dir, "output directory for reports and dumps")
            ->default_str("out");
        sub->add_option("--seed", cfg.seed, "seed for randomized checks")->default_val(42u);
        sub->add_option("--threads", threads, "worker threads for operator composition (0=auto)");
    };

    CLI::App* v = app.add_subcommand("verify", "run the exact algebra verification suite");
    v->add_option("--kind", kind, "classical|quantum")->required();
    v->add_option("--n", cfg.N, "dimension N (3..6)")->required();
    v->add_option("--convention", cfg.bracket_convention,
                  "bracket convention for classical checks: paper|standard|both");
    v->add_flag("!--no-fits", fits, "skip structure-constant fits");
    v->add_flag("!--no-casimir", casimir, "skip Casimir checks");
    v->add_flag("--printed-casimir", printed_variants,
                "also re-verify the as-printed Casimir coefficient variants (known errata)");
    v->add_option("--printed-casimir-max-n", printed_casimir_max_n,
                  "largest N at which the printed Casimir variants are re-verified");
    add_common(v);

    CLI::App* s = app.add_subcommand("spectrum", "closed-form vs algebraic vs numeric spectrum");
    s->add_option("--n", cfg.N, "dimension N")->required();
    s->add_option("--c0", c0s, "Coulomb coupling")->required();
    s->add_option("--c1", c1s, "non-central coupling c1");
    s->add_option("--c2", c2s, "non-central coupling c2");
    s->add_option("--hbar", hbars, "hbar");
    s->add_option("--levels", cfg.levels, "number of levels")->required();
    s->add_option("--I", cfg.I, "angular quantum number I");
    s->add_option("--convention", cfg.spectrum_convention, "reconciled|as-printed");
    s->add_option("--tol-badge", cfg.tol_badge, "pass tolerance for the deviation badge");
    add_common(s);

    CLI::App* w = app.add_subcommand("wavecheck", "ODE residual and norm audit");
    w->add_option("--which", which, "angular|radial|parabolic")->required();
    w->add_option("--n-dim", cfg.N, "dimension N");
    w->add_option("--n", n, "principal quantum number (radial)");
    w->add_option("--l", l, "angular momentum l");
    w->add_option("--I", I, "angular quantum number I");
    w->add_option("--n1", n1, "parabolic n1");
    w->add_option("--n2", n2, "parabolic n2");
    w->add_option("--c0", c0s, "Coulomb coupling");
    w->add_option("--c1", c1s, "non-central coupling c1");
    w->add_option("--c2", c2s, "non-central coupling c2");
    w->add_option("--hbar", hbars, "hbar");
    w->add_option("--tol", cfg.tol_residual, "residual tolerance");
    add_common(w);

    CLI::App* e = app.add_subcommand("erratum", "consolidated as-printed vs engine ledger");
    bool all = false;
    e->add_flag("--all", all, "include every entry (default)");
    add_common(e);

    CLI11_PARSE(app, argc, argv);

    try {
        if (threads > 0) set_compose_threads(threads);
        if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text") {
            std::cerr << "unknown --format\n";
            return kExitUsage;
        }
        ModelParams params;
        params.N = cfg.N;
        if (app.got_subcommand(s) || app.got_subcommand(w)) {
            params.c0 = std::stod(c0s);
            params.c1 = std::stod(c1s);
            params.c2 = std::stod(c2s);
            params.hbar = std::stod(hbars);
            cfg.c0 = c0s;
            cfg.c1 = c1s;
            cfg.c2 = c2s;
            cfg.hbar = hbars;
            params.validate_numeric();
        }
        if (app.got_subcommand(v)) {
            cfg.command = "verify";
            if (kind != "classical" && kind != "quantum") {
                std::cerr << "verify: --kind must be classical or quantum\n";
                return kExitUsage;
            }
            if (cfg.bracket_convention != "paper" && cfg.bracket_convention != "standard" &&
                cfg.bracket_convention != "both") {
                std::cerr << "verify: --convention must be paper|standard|both\n";
                return kExitUsage;
            }
            return cmd_verify(cfg, kind, fits, casimir, printed_variants,
                              printed_casimir_max_n);
        }
        if (app.got_subcommand(s)) {
            cfg.command = "spectrum";
            if (cfg.levels < 1 || cfg.I < 0) {
                std::cerr << "spectrum: need --levels >= 1 and --I >= 0\n";
                return kExitUsage;
            }
            if (cfg.spectrum_convention != "reconciled" &&
                cfg.spectrum_convention != "as-printed") {
                std::cerr << "spectrum: --convention must be reconciled|as-printed\n";
                return kExitUsage;
            }
            return cmd_spectrum(cfg, params);
        }
        if (app.got_subcommand(w)) {
            cfg.command = "wavecheck";
            return cmd_wavecheck(cfg, params, which, n, l, I, n1, n2);
        }
        if (app.got_subcommand(e)) {
            cfg.command = "erratum";
            return cmd_erratum(cfg);
        }
        return kExitUsage;
    } catch (const FallToCenter& ex) {
        std::cerr << "fall-to-center: " << ex.what() << "\n";
        return kExitFallToCenter;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "tool failure: " << ex.what() << "\n";
        return kExitToolFailure;
    }
}
