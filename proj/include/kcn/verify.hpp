#ifndef KCN_VERIFY_HPP
#define KCN_VERIFY_HPP

#include <string>
#include <vector>

#include "kcn/fit.hpp"
#include "kcn/observables.hpp"

namespace kcn {

enum class ObsKind { Classical, Quantum };

struct VerificationReport {
    std::string id;
    ObsKind kind = ObsKind::Classical;
    int N = 0;
    enum class Verdict { ExactPass, Residual, Fitted } verdict = Verdict::ExactPass;
    bool pass = false;
    std::size_t residual_terms = 0;
    std::string residual_dump;  // canonical term list when verdict == Residual
    std::vector<std::pair<std::string, std::string>> fitted;  // basis name -> coefficient
    bool underdetermined = false;
    double wall_ms = 0;
};

struct SuiteOptions {
    BracketConvention convention = BracketConvention::Standard;
    bool with_fits = true;
    bool with_casimir = true;
    // re-verify the as-printed Casimir coefficient variants (known errata,
    // see the erratum ledger); off by default so a clean run reports the
    // validated algebra
    bool printed_casimir_variants = false;
    int printed_casimir_max_n = 3;
    const CancelToken* token = nullptr;
};

struct ClassicalSuiteResult {
    std::vector<VerificationReport> reports;
    CanonicalExpr C;  // computed {A,B} under the requested convention
};

struct QuantumSuiteResult {
    std::vector<VerificationReport> reports;
    DiffOp C;  // computed [A,B]
};

ClassicalSuiteResult run_classical_suite(int N, const SuiteOptions& opt);
QuantumSuiteResult run_quantum_suite(int N, const SuiteOptions& opt);

// individual check groups (reports appended)
std::vector<VerificationReport> check_conservation(const ClassicalObservables& obs,
                                                   BracketConvention conv);
std::vector<VerificationReport> check_conservation(const QuantumObservables& obs,
                                                   const CancelToken* tok = nullptr);
std::vector<VerificationReport> check_so_relations(const ClassicalObservables& obs,
                                                   BracketConvention conv);
std::vector<VerificationReport> check_so_relations(const QuantumObservables& obs,
                                                   const CancelToken* tok = nullptr);

bool all_pass(const std::vector<VerificationReport>& reports);
bool any_residual(const std::vector<VerificationReport>& reports);

}  // namespace kcn

#endif
