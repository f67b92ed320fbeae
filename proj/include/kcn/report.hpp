#ifndef KCN_REPORT_HPP
#define KCN_REPORT_HPP

#include <string>
#include <vector>

#include "kcn/oracle.hpp"
#include "kcn/verify.hpp"

namespace kcn {

struct RunConfig {
    std::string command;
    int N = 3;
    std::string c0 = "symbolic", c1 = "symbolic", c2 = "symbolic", hbar = "symbolic";
    std::string bracket_convention = "both";        // paper | standard | both
    std::string spectrum_convention = "reconciled";  // reconciled | as-printed
    std::string format = "text";                     // json | csv | text
    std::string out_dir = "out";
    unsigned seed = 42;
    int levels = 3, I = 0;
    double tol_badge = 1e-4;
    double tol_residual = 1e-8;
};

struct ErratumEntry {
    std::string key;       // e.g. "Eq(2.43)/factor2"
    std::string location;  // printed-source location tag
    std::string printed;   // the printed form
    std::string finding;   // what the engine established
    std::string evidence;  // machine-checked numbers / residual sizes
    std::string evidence_path;  // dump file, when one was written
};

// serialize per the documented schema:
// {"run": {...}, "results": [{"id","verdict","data"}], "errata": [...]}
std::string report_json(const RunConfig& cfg, const std::vector<VerificationReport>& reports,
                        const std::vector<ErratumEntry>& errata);
std::string report_text(const RunConfig& cfg, const std::vector<VerificationReport>& reports,
                        const std::vector<ErratumEntry>& errata);

std::string spectrum_csv(const std::vector<SpectrumLine>& lines, bool printed_col);
std::string spectrum_json(const RunConfig& cfg, const std::vector<SpectrumLine>& lines,
                          bool printed_col);
std::string spectrum_text(const std::vector<SpectrumLine>& lines, bool printed_col);

// Phi comparison probe: expanded form vs factorized form at `npoints` random
// (x,u,E) draws; one line per point per m-convention.
struct PhiProbePoint {
    double x, u, E;
    double factorized_reconciled_m, factorized_printed_m, expanded;
    bool match_reconciled, match_printed;
};
std::vector<PhiProbePoint> phi_probe(const ModelParams& params, int I, int npoints,
                                     unsigned seed);

// Full erratum ledger with machine-checked evidence. Writes evidence dumps
// under out_dir (pass empty to skip writing).
std::vector<ErratumEntry> build_erratum_ledger(const RunConfig& cfg);

// deterministic double formatting used by every emitter
std::string fmt_double(double v);

bool write_file(const std::string& path, const std::string& content);

}  // namespace kcn

#endif
