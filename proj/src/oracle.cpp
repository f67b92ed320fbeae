#include "kcn/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace kcn {

namespace {

// eigenvalue count below sigma via the Sturm sequence
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double sigma) {
    int count = 0;
    double t = d[0] - sigma;
    if (t < 0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        double denom = t;
        if (denom == 0.0) denom = 1e-300;
        t = d[i] - sigma - e[i - 1] * e[i - 1] / denom;
        if (t < 0) ++count;
    }
    return count;
}

}  // namespace

std::vector<double> tridiag_lowest_eigenvalues(const std::vector<double>& diag,
                                               const std::vector<double>& off, int k) {
    const int n = static_cast<int>(diag.size());
    if (n == 0 || k <= 0) return {};
    k = std::min(k, n);
    double emax = 0;
    for (double v : off) emax = std::max(emax, std::abs(v));
    double lo = diag[0], hi = diag[0];
    for (double v : diag) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    lo -= 2 * emax + 1;
    hi += 2 * emax + 1;
    std::vector<double> out;
    out.reserve(k);
    for (int j = 1; j <= k; ++j) {
        double a = lo, b = hi;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (a + b);
            if (sturm_count(diag, off, mid) >= j)
                b = mid;
            else
                a = mid;
            if (b - a <= 1e-14 * std::max(1.0, std::abs(b))) break;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

double RadialProblem::default_r_min() const {
    // the reduced wavefunction satisfies u(0) = 0 exactly; a finite cutoff
    // costs O(r_min) accuracy for s-states, so keep it tiny
    ParamVals v = params.bound();
    double a = v.hbar * v.hbar / v.c0;
    return 1e-9 * a;
}

double RadialProblem::default_r_max(int levels) const {
    ParamVals v = params.bound();
    double a = v.hbar * v.hbar / v.c0;
    // reach past the classical turning point of the highest requested state
    // with enough exponential tail for box-independence
    double n_eff = levels + std::sqrt(std::max(0.0, A_eff)) + 2.0;
    return std::max(60.0, 12.0 * n_eff * n_eff + 30.0 * n_eff) * a;
}

namespace {

std::vector<double> radial_eigs_on_grid(const RadialProblem& pb, int k, int M, double rmin,
                                        double rmax) {
    ParamVals v = pb.params.bound();
    const int N = pb.params.N;
    double lambda = pb.A_eff + 0.25 * (N - 1.0) * (N - 3.0);
    if (lambda < -0.25) throw FallToCenter();
    double c0p = v.c0 / (v.hbar * v.hbar);
    double h = (rmax - rmin) / (M + 1);
    std::vector<double> d(M), e(M - 1, -0.5 / (h * h));
    for (int i = 0; i < M; ++i) {
        double r = rmin + (i + 1) * h;
        d[i] = 1.0 / (h * h) + 0.5 * lambda / (r * r) - c0p / r;
    }
    return tridiag_lowest_eigenvalues(d, e, k);
}

}  // namespace

EigenResult solve_radial(const RadialProblem& problem, int k) {
    if (k < 1) throw std::invalid_argument("solve_radial: k >= 1");
    problem.params.validate_numeric();
    ParamVals v = problem.params.bound();
    EigenResult res;
    res.r_min = problem.r_min > 0 ? problem.r_min : problem.default_r_min();
    res.r_max = problem.r_max > 0 ? problem.r_max : problem.default_r_max(k);
    if (!(res.r_max > res.r_min)) throw std::invalid_argument("solve_radial: bad interval");
    int M = std::max(problem.M, 200);
    res.M = M;

    res.raw_coarse = radial_eigs_on_grid(problem, k, M, res.r_min, res.r_max);
    res.raw_fine = radial_eigs_on_grid(problem, k, 2 * M + 1, res.r_min, res.r_max);
    for (int j = 0; j < k; ++j) {
        double Eh = res.raw_coarse[j], Eh2 = res.raw_fine[j];
        double ext = (4.0 * Eh2 - Eh) / 3.0;
        double Ej = ext * v.hbar * v.hbar;  // primed units back to E
        if (Ej >= 0.0) {
            res.complete = false;
            break;
        }
        res.eigenvalues.push_back(Ej);
        res.error_estimates.push_back(std::abs(Eh2 - Eh) / 3.0 * v.hbar * v.hbar);
    }
    return res;
}

namespace {

std::vector<double> angular_eigs_on_grid(const ModelParams& params, int I, int k, int M) {
    const int N = params.N;
    DeltaPair dp = delta_pair(params, I);
    // weight exponents of the regularizing substitution
    double A1 = dp.d1 + I + 0.5 * (N - 3.0);
    double B1 = dp.d2 + I + 0.5 * (N - 3.0);
    double h = 2.0 / M;
    auto logw = [&](double z) { return A1 * std::log1p(z) + B1 * std::log1p(-z); };
    // cell-centered conservative scheme; boundary fluxes vanish with 1 - z^2
    std::vector<double> d(M), e(M - 1);
    std::vector<double> logwc(M);
    for (int i = 0; i < M; ++i) {
        double z = -1.0 + (i + 0.5) * h;
        logwc[i] = logw(z);
    }
    std::vector<double> cface(M + 1, 0.0);  // (1-z^2) w at faces
    for (int i = 1; i < M; ++i) {
        double z = -1.0 + i * h;
        cface[i] = (1.0 - z * z) * std::exp(logw(z));
    }
    for (int i = 0; i < M; ++i) {
        double wc = std::exp(logwc[i]);
        d[i] = (cface[i] + cface[i + 1]) / (h * h * wc);
    }
    for (int i = 0; i + 1 < M; ++i)
        e[i] = -cface[i + 1] / (h * h) * std::exp(-0.5 * (logwc[i] + logwc[i + 1]));
    auto eig = tridiag_lowest_eigenvalues(d, e, k);
    double sigmaI = 0.5 * (dp.d1 + dp.d2) + I;
    for (auto& lam : eig) lam += sigmaI * (sigmaI + N - 2.0);
    return eig;
}

}  // namespace

EigenResult solve_angular(const ModelParams& params, int I, int k, int M) {
    if (k < 1) throw std::invalid_argument("solve_angular: k >= 1");
    params.validate_numeric();
    EigenResult res;
    res.M = M;
    res.r_min = -1;
    res.r_max = 1;
    res.raw_coarse = angular_eigs_on_grid(params, I, k, M);
    res.raw_fine = angular_eigs_on_grid(params, I, k, 2 * M);
    for (int j = 0; j < k; ++j) {
        double Eh = res.raw_coarse[j], Eh2 = res.raw_fine[j];
        res.eigenvalues.push_back((4.0 * Eh2 - Eh) / 3.0);
        res.error_estimates.push_back(std::abs(Eh2 - Eh) / 3.0);
    }
    return res;
}

std::vector<SpectrumLine> compare_spectrum(const ModelParams& params, int I, int levels,
                                           bool include_printed) {
    params.validate_numeric();
    RadialProblem pb;
    pb.params = params;
    pb.A_eff = separation_constant_A(params, I, I);
    EigenResult oracle = solve_radial(pb, levels);

    std::vector<SpectrumLine> lines;
    for (int p = 0; p < levels; ++p) {
        SpectrumLine line;
        line.p = p;
        line.I = I;
        line.n = p + I + 1;
        line.E_formula = energy_spherical(params, line.n, I);
        line.E_parabolic = energy_parabolic(params, p, 0, I, SpectrumConvention::Reconciled);
        line.E_algebraic =
            solve_constraint_set(params, I, p, 1, 1, 1, SpectrumConvention::Reconciled).E;
        line.E_numeric = p < static_cast<int>(oracle.eigenvalues.size())
                             ? oracle.eigenvalues[p]
                             : std::nan("");
        if (include_printed)
            line.E_parabolic_printed =
                energy_parabolic(params, p, 0, I, SpectrumConvention::AsPrinted);
        double vals[4] = {line.E_formula, line.E_parabolic, line.E_algebraic, line.E_numeric};
        double badge = 0, scale = 0;
        for (double v : vals) scale = std::max(scale, std::abs(v));
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                badge = std::max(badge, std::abs(vals[a] - vals[b]));
        line.badge = std::isnan(line.E_numeric) ? std::nan("") : badge / scale;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace kcn
