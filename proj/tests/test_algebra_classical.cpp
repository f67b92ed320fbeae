#include <doctest.h>

#include <map>

#include "kcn/verify.hpp"

using namespace kcn;

namespace {

std::map<std::string, const VerificationReport*> by_id(
    const std::vector<VerificationReport>& rs) {
    std::map<std::string, const VerificationReport*> m;
    for (auto& r : rs) m[r.id] = &r;
    return m;
}

ParamPoly pc0() { return ParamPoly::gen(Param::C0); }
ParamPoly pc1() { return ParamPoly::gen(Param::C1); }
ParamPoly pc2() { return ParamPoly::gen(Param::C2); }

}  // namespace

TEST_CASE("classical suite under the standard convention, N=3 and N=4") {
    for (int n : {3, 4}) {
        SuiteOptions opt;
        opt.convention = BracketConvention::Standard;
        opt.printed_casimir_variants = true;
        auto res = run_classical_suite(n, opt);
        auto m = by_id(res.reports);

        CHECK(m.at("conservation.HA")->pass);
        CHECK(m.at("conservation.HB")->pass);
        CHECK(m.at("conservation.AJ2")->pass);
        CHECK(m.at("conservation.BJ2")->pass);
        CHECK(m.at("conservation.HL12")->pass);
        CHECK(m.at("conservation.AL12")->pass);
        CHECK(m.at("conservation.BL12")->pass);
        if (n == 4) CHECK(m.at("so.L12L23")->pass);

        // printed C matches {A,B} under this convention
        CHECK(m.at("classical.kf7.Cprinted")->pass);
        // quadratic algebra relations hold exactly
        CHECK(m.at("classical.kf2")->pass);
        CHECK(m.at("classical.kf3")->pass);

        // structure constants as printed
        auto& fit_ac = *m.at("fit.classical.AC");
        REQUIRE(fit_ac.pass);
        CHECK(fit_ac.fitted[0].second == ParamPoly::constant(Rational(-4)).to_string());
        CHECK(fit_ac.fitted[3].second ==
              ((pc1() - pc2()) * pc0()).scaled(Rational(4)).to_string());
        auto& fit_bc = *m.at("fit.classical.BC");
        REQUIRE(fit_bc.pass);
        CHECK(fit_bc.fitted[0].second == ParamPoly::constant(Rational(2)).to_string());
        CHECK(fit_bc.fitted[1].second == ParamPoly::constant(Rational(-8)).to_string());
        CHECK(fit_bc.fitted[2].second == ParamPoly::constant(Rational(4)).to_string());
        CHECK(fit_bc.fitted[3].second == (pc1() + pc2()).scaled(Rational(8)).to_string());
        CHECK(fit_bc.fitted[4].second == (pc0() * pc0()).scaled(Rational(-2)).to_string());

        // printed Casimir fails centrality in B and the reduction; the
        // corrected J^2 H A variant passes everything
        CHECK(m.at("classical.kf4.central.A.printed")->pass);
        CHECK(!m.at("classical.kf4.central.B.printed")->pass);
        CHECK(!m.at("classical.reduction.printed")->pass);
        CHECK(m.at("classical.kf4.central.A.corrected")->pass);
        CHECK(m.at("classical.kf4.central.B.corrected")->pass);
        CHECK(m.at("classical.reduction.corrected")->pass);

        // consistency: quadratic relations passing implies corrected-K
        // centrality passes (cross-check the suite asserts)
        if (m.at("classical.kf2")->pass && m.at("classical.kf3")->pass) {
            CHECK(m.at("classical.kf4.central.A.corrected")->pass);
            CHECK(m.at("classical.kf4.central.B.corrected")->pass);
        }
    }
}

TEST_CASE("classical suite under the printed bracket convention") {
    SuiteOptions opt;
    opt.convention = BracketConvention::Paper;
    opt.with_fits = false;
    opt.with_casimir = false;
    auto res = run_classical_suite(4, opt);
    auto m = by_id(res.reports);
    // conservation is sign-insensitive
    CHECK(m.at("conservation.HA")->pass);
    CHECK(m.at("conservation.HB")->pass);
    // the printed C and the printed so(N-1) pattern single out the standard
    // convention; under the printed definition both flip sign
    CHECK(!m.at("classical.kf7.Cprinted")->pass);
    CHECK(!m.at("so.L12L23")->pass);
    // the quadratic relations are insensitive to the convention (C is
    // recomputed within it)
    CHECK(m.at("classical.kf2")->pass);
    CHECK(m.at("classical.kf3")->pass);
}

TEST_CASE("verdicts are deterministic across reruns") {
    SuiteOptions opt;
    opt.convention = BracketConvention::Standard;
    opt.with_casimir = false;
    auto r1 = run_classical_suite(3, opt);
    auto r2 = run_classical_suite(3, opt);
    REQUIRE(r1.reports.size() == r2.reports.size());
    for (std::size_t k = 0; k < r1.reports.size(); ++k) {
        CHECK(r1.reports[k].id == r2.reports[k].id);
        CHECK(r1.reports[k].pass == r2.reports[k].pass);
        CHECK(r1.reports[k].residual_terms == r2.reports[k].residual_terms);
        CHECK(r1.reports[k].residual_dump == r2.reports[k].residual_dump);
    }
    CHECK(r1.C == r2.C);
}
