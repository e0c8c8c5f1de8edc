#include "tsx/state.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tsx {

namespace {

std::string describe(const char* name, double value, const char* bound) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s = %.6g %s", name, value, bound);
    return buf;
}

} // namespace

double DensityMatrix4::max_hermiticity_error() const {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

double DensityMatrix4::max_abs_imag() const {
    double worst = 0.0;
    for (const auto& v : e) worst = std::max(worst, std::abs(v.imag()));
    return worst;
}

DensityMatrix4 kron(const Mat2c& a, const Mat2c& b) {
    DensityMatrix4 out;
    for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib)
            for (int ja = 0; ja < 2; ++ja)
                for (int jb = 0; jb < 2; ++jb)
                    out(2 * ia + ib, 2 * ja + jb) = a[2 * ia + ja] * b[2 * ib + jb];
    return out;
}

std::array<double, 4> diagonal_probs(const StateParams& params) {
    const double p = params.p;
    const double b = p * (1.0 - p) - params.kappa;
    return {p * p + params.kappa, b, b, (1.0 - p) * (1.0 - p) + params.kappa};
}

Spectrum eigenvalues(const StateParams& params) {
    const double p = params.p;
    const double b = p * (1.0 - p) - params.kappa;
    return {{p * p + params.kappa, b + params.z_mag, b - params.z_mag,
             (1.0 - p) * (1.0 - p) + params.kappa}};
}

FeasibilityReport is_feasible(const StateParams& params) {
    FeasibilityReport report;
    auto fail = [&report](std::string text) {
        report.ok = false;
        report.violations.push_back(std::move(text));
    };

    if (params.p < -kFeasibilitySlack) fail(describe("p", params.p, "< 0"));
    if (params.p > 1.0 + kFeasibilitySlack) fail(describe("p", params.p, "> 1"));
    if (params.z_mag < -kFeasibilitySlack) fail(describe("|z|", params.z_mag, "< 0"));

    static constexpr const char* names[4] = {"lambda1", "lambda2", "lambda3", "lambda4"};
    const Spectrum spec = eigenvalues(params);
    for (int i = 0; i < 4; ++i) {
        if (spec.lambda[i] < -kFeasibilitySlack) fail(describe(names[i], spec.lambda[i], "< 0"));
        if (spec.lambda[i] > 1.0 + kFeasibilitySlack) fail(describe(names[i], spec.lambda[i], "> 1"));
    }
    return report;
}

std::optional<KappaInterval> feasible_kappa_interval(double p, double z_mag) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("feasible_kappa_interval: p outside [0,1]");
    if (z_mag < 0.0) throw std::invalid_argument("feasible_kappa_interval: z_mag < 0");
    const double lo = -std::min(p * p, (1.0 - p) * (1.0 - p));
    const double hi = p * (1.0 - p) - z_mag;
    if (hi < lo) return std::nullopt;
    return KappaInterval{lo, hi};
}

DensityMatrix4 build_density_matrix(const StateParams& params) {
    DensityMatrix4 rho;
    const auto probs = diagonal_probs(params);
    for (int i = 0; i < 4; ++i) rho(i, i) = probs[i];
    rho(1, 2) = params.z();
    rho(2, 1) = std::conj(params.z());
    return rho;
}

Marginals marginals(const StateParams& params) {
    return {{params.p, 1.0 - params.p}, {params.p, 1.0 - params.p}};
}

SpinCoefficients spin_decomposition(const StateParams& params) {
    const double s_z = 2.0 * params.p - 1.0;
    return {s_z, 4.0 * params.kappa + s_z * s_z, params.z()};
}

DensityMatrix4 reconstruct_from_spin(const SpinCoefficients& coeffs) {
    static const Mat2c id{1.0, 0.0, 0.0, 1.0};
    static const Mat2c sz{1.0, 0.0, 0.0, -1.0};
    static const Mat2c sp{0.0, 1.0, 0.0, 0.0}; // |1><0|
    static const Mat2c sm{0.0, 0.0, 1.0, 0.0}; // |0><1|

    // The transverse operators have unit trace norm rather than the norm 4 of
    // the diagonal ones, so only the diagonal part carries the 1/4.
    DensityMatrix4 out;
    const DensityMatrix4 ii = kron(id, id);
    const DensityMatrix4 iz = kron(id, sz);
    const DensityMatrix4 zi = kron(sz, id);
    const DensityMatrix4 zz = kron(sz, sz);
    const DensityMatrix4 pm = kron(sp, sm);
    const DensityMatrix4 mp = kron(sm, sp);
    for (int k = 0; k < 16; ++k) {
        out.e[k] = 0.25 * (ii.e[k] + coeffs.s_z * (iz.e[k] + zi.e[k]) + coeffs.c_zz * zz.e[k]) +
                   coeffs.c_pm * pm.e[k] + std::conj(coeffs.c_pm) * mp.e[k];
    }
    return out;
}

SeparableDecomposition separable_decomposition(const StateParams& params) {
    if (params.z_mag != 0.0)
        throw std::invalid_argument(
            "separable_decomposition: defined only for the diagonal case z = 0");
    const auto feas = is_feasible(params);
    if (!feas.ok)
        throw std::domain_error("separable_decomposition: infeasible parameters: " +
                                feas.violations.front());

    static const Mat2c one{1.0, 0.0, 0.0, 0.0};  // |1><1|
    static const Mat2c zero{0.0, 0.0, 0.0, 1.0}; // |0><0|
    const auto probs = diagonal_probs(params);
    SeparableDecomposition dec;
    dec.terms[0] = {probs[0], one, one};
    dec.terms[1] = {probs[1], one, zero};
    dec.terms[2] = {probs[2], zero, one};
    dec.terms[3] = {probs[3], zero, zero};
    return dec;
}

} // namespace tsx
