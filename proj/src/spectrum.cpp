#include "kcn/spectrum.hpp"

#include <cmath>

namespace kcn {

namespace {

double delta_one(double c, double hbar, double s) {
    if (c == 0.0) return 0.0;
    double rad = s * s + 4.0 * c / (hbar * hbar);
    if (rad < 0.0) throw FallToCenter();
    // sqrt(s^2 + 4c/h^2) - s without cancellation for small c
    return (4.0 * c / (hbar * hbar)) / (std::sqrt(rad) + s);
}

}  // namespace

DeltaPair delta_pair(const ModelParams& params, int I) {
    if (I < 0) throw std::invalid_argument("delta_pair: I >= 0 required");
    ParamVals v = params.bound();
    double s = I + 0.5 * (params.N - 3);
    return {delta_one(v.c1, v.hbar, s), delta_one(v.c2, v.hbar, s)};
}

double separation_constant_A(const ModelParams& params, int l, int I) {
    if (l < I) throw std::invalid_argument("separation_constant_A: l >= I required");
    DeltaPair d = delta_pair(params, I);
    double t = l + 0.5 * (d.d1 + d.d2);
    return t * (t + params.N - 2);
}

double energy_spherical(const ModelParams& params, int n, int I) {
    if (n < 1) throw std::invalid_argument("energy_spherical: n >= 1 required");
    ParamVals v = params.bound();
    DeltaPair d = delta_pair(params, I);
    double t = n + 0.5 * (d.d1 + d.d2) + 0.5 * (params.N - 3);
    return -v.c0 * v.c0 / (2.0 * v.hbar * v.hbar * t * t);
}

double energy_parabolic(const ModelParams& params, int n1, int n2, int I,
                        SpectrumConvention conv) {
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("energy_parabolic: n1,n2 >= 0");
    ParamVals v = params.bound();
    DeltaPair d = delta_pair(params, I);
    double s = n1 + n2 + 0.5 * (d.d1 + d.d2 + 2.0 * I + params.N - 1);
    double denom = v.hbar * v.hbar * s * s;
    // as printed the energy misses the factor 1/2 relative to the
    // hyperspherical formula under n = n1+n2+I+1
    return conv == SpectrumConvention::AsPrinted ? -v.c0 * v.c0 / denom
                                                 : -v.c0 * v.c0 / (2.0 * denom);
}

MPair m_pair(const ModelParams& params, int I, SpectrumConvention conv) {
    DeltaPair d = delta_pair(params, I);
    double off = I + 0.5 * (params.N - 3);
    MPair m{d.d1 + off, d.d2 + off};
    if (conv == SpectrumConvention::AsPrinted) {
        m.m1 *= 2.0;
        m.m2 *= 2.0;
    }
    return m;
}

MPrintedVariants m_pair_printed_variants(const ModelParams& params, int I) {
    ParamVals v = params.bound();
    DeltaPair d = delta_pair(params, I);
    auto radical = [&](double c) {
        double t = 16.0 * c / (v.hbar * v.hbar) + 4.0 * I * (I + params.N - 3) +
                   (params.N - 3.0) * (params.N - 3.0);
        return std::sqrt(t);
    };
    auto linear = [&](double delta) { return 0.5 * (3.0 - 2.0 * I - params.N - 2.0 * delta); };
    return {radical(v.c1), radical(v.c2), linear(d.d1), linear(d.d2)};
}

namespace {

struct PhiFactors {
    double prefactor;
    std::array<double, 6> f;
    double value() const {
        double v = prefactor;
        for (double x : f) v *= x;
        return v;
    }
    double scale() const {
        double s = std::abs(prefactor);
        for (double x : f) s *= std::max(1.0, std::abs(x));
        return s;
    }
};

PhiFactors phi_factorized(double x, double u, double E, const ModelParams& params, int I,
                          SpectrumConvention conv) {
    if (E >= 0.0) throw std::domain_error("phi: E < 0 required");
    ParamVals v = params.bound();
    MPair m = m_pair(params, I, conv);
    double q = v.c0 / (v.hbar * std::sqrt(-2.0 * E));
    double h = v.hbar;
    double h18 = std::pow(h, 18);
    PhiFactors pf;
    pf.prefactor = 6291456.0 * E * h18;
    double w = x + u;
    pf.f = {w - 0.5 * (1.0 - m.m1 - m.m2), w - 0.5 * (1.0 - m.m1 + m.m2),
            w - 0.5 * (1.0 + m.m1 - m.m2), w - 0.5 * (1.0 + m.m1 + m.m2),
            w - (0.5 - q), w - (0.5 + q)};
    return pf;
}

double phi_expanded(double x, double u, double E, const ModelParams& params, int I) {
    if (E >= 0.0) throw std::domain_error("phi: E < 0 required");
    ParamVals vals = params.bound();
    const double h = vals.hbar, c0 = vals.c0, c1 = vals.c1, c2 = vals.c2;
    const double N = params.N;
    const double J2 = h * h * I * (I + params.N - 3);
    const double H = E;
    auto hp = [&](int k) { return std::pow(h, k); };
    const double w = x + u;
    const double v = 2.0 * w - 1.0;
    const double G = 2 * c0 * c0 * hp(2) - 8 * (c1 + c2) * hp(2) * H - 4 * hp(2) * H * J2 +
                     hp(4) * H * (N - 1) * (N - 1);

    double t1 = 3145728.0 * c0 * c0 * (c1 - c2) * (c1 - c2) * hp(12);
    double t2 = -196608.0 * hp(12) *
                (8 * c0 * c0 * (c1 + c2) * hp(2) - 8 * (c1 - c2) * (c1 - c2) * hp(2) * H +
                 4 * c0 * c0 * hp(2) * J2 - 2 * c0 * c0 * hp(4) * (N - 3) +
                 4 * (c1 + c2) * hp(4) * H * (N - 3) * (N - 1) +
                 2 * hp(4) * H * J2 * (N - 3) * (N - 1) - hp(6) * H * (N - 3) * (N - 1) * (N - 1)) *
                v * v;
    double t3 = -1024.0 * hp(4) *
                (-128 * hp(10) * G + 256 * hp(14) * H * (N - 3) * (N - 1) +
                 96 * hp(10) * G * (N - 3) * (N - 1) -
                 96 * hp(14) * H * (N - 3) * (N - 3) * (N - 1) * (N - 1)) *
                v * v;
    double t4 = 98304.0 * hp(18) * H * (2 * w - 3) * v * v * v * v * (2 * w + 1);
    double t5 = 512.0 * hp(8) * (64 * hp(6) * G - 128 * hp(10) * H * (N - 3) * (N - 1)) * v * v *
                (-1.0 - 12.0 * w + 12.0 * w * w);
    return t1 + t2 + t3 + t4 + t5;
}

}  // namespace

double phi(double x, double u, double E, const ModelParams& params, int I, PhiForm form,
           SpectrumConvention conv) {
    if (form == PhiForm::Expanded) return phi_expanded(x, u, E, params, I);
    return phi_factorized(x, u, E, params, I, conv).value();
}

AlgebraicSolution solve_constraint_set(const ModelParams& params, int I, int p, int eps1,
                                       int eps2, int set_id, SpectrumConvention conv) {
    if (p < 0) throw std::invalid_argument("solve_constraint_set: p >= 0 required");
    if (set_id < 1 || set_id > 3) throw std::invalid_argument("solve_constraint_set: set id 1..3");
    if ((eps1 != 1 && eps1 != -1) || (eps2 != 1 && eps2 != -1))
        throw std::invalid_argument("solve_constraint_set: eps in {-1,+1}");
    ParamVals v = params.bound();
    MPair m = m_pair(params, I, conv);

    AlgebraicSolution sol;
    sol.set_id = set_id;
    sol.eps1 = eps1;
    sol.eps2 = eps2;
    sol.p = p;
    sol.m1 = m.m1;
    sol.m2 = m.m2;
    sol.convention = conv;

    double M = 2.0 + 2.0 * p + eps1 * m.m1 + eps2 * m.m2;
    if (M == 0.0) throw std::domain_error("solve_constraint_set: degenerate constraint");
    sol.E = -2.0 * v.c0 * v.c0 / (v.hbar * v.hbar * M * M);
    double q = v.c0 / (v.hbar * std::sqrt(-2.0 * sol.E));

    switch (set_id) {
        case 1:
            // printed u has +q; only the -q branch satisfies Phi(p+1)=0,
            // which reconciled mode adopts
            sol.u = conv == SpectrumConvention::AsPrinted ? 0.5 + q : 0.5 - q;
            break;
        case 2:
            sol.u = 0.5 - q;
            break;
        case 3:
            sol.u = 0.5 * (1.0 + eps1 * m.m1 + eps2 * m.m2);
            break;
    }

    auto rel = [&](double x) {
        PhiFactors pf = phi_factorized(x, sol.u, sol.E, params, I, conv);
        double s = pf.scale();
        return s > 0 ? std::abs(pf.value()) / s : 0.0;
    };
    sol.phi0_rel = rel(0.0);
    sol.phip1_rel = rel(p + 1.0);
    sol.constraints_ok = sol.phi0_rel <= 1e-12 && sol.phip1_rel <= 1e-12;
    sol.unitary = true;
    for (int x = 1; x <= p; ++x) {
        if (phi(x, sol.u, sol.E, params, I, PhiForm::Factorized, conv) <= 0.0) {
            sol.unitary = false;
            break;
        }
    }
    return sol;
}

RepresentationReport representation_check(const AlgebraicSolution& sol,
                                          const ModelParams& params, int I) {
    RepresentationReport rep;
    rep.p = sol.p;
    auto rel = [&](double x) {
        PhiFactors pf = phi_factorized(x, sol.u, sol.E, params, I, sol.convention);
        double s = pf.scale();
        return s > 0 ? std::abs(pf.value()) / s : 0.0;
    };
    rep.phi0_zero = rel(0.0) <= 1e-12;
    rep.phip1_zero = rel(sol.p + 1.0) <= 1e-12;
    rep.positive_interior = true;
    for (int x = 1; x <= sol.p; ++x) {
        double val = phi(x, sol.u, sol.E, params, I, PhiForm::Factorized, sol.convention);
        rep.interior_values.push_back(val);
        if (val <= 0.0) rep.positive_interior = false;
    }
    rep.dimension = sol.p + 1;
    rep.degeneracy = sol.p + 1;
    return rep;
}

}  // namespace kcn
