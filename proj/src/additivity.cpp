#include "tsx/additivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsx {

namespace {

// A residual this small at a scan endpoint counts as a root sitting exactly
// on the feasibility boundary.
constexpr double kBoundaryResidualTol = 1e-12;
constexpr int kScanCells = 64;
constexpr int kMaxBisectIterations = 200;

AdditivitySolution bisect_bracket(double p, QIndex q, double z_mag, double lo, double hi,
                                  double r_lo, double tol) {
    AdditivitySolution sol;
    sol.bracket = {lo, hi};
    double mid = 0.5 * (lo + hi);
    double r_mid = 0.0;
    int it = 0;
    while (it < kMaxBisectIterations) {
        ++it;
        mid = 0.5 * (lo + hi);
        r_mid = additivity_residual(p, mid, q, z_mag);
        if (r_mid == 0.0) break;
        // Converge on kappa and keep shrinking until the residual is small
        // too: near a feasibility edge the residual slope blows up, so the
        // kappa criterion alone can leave it orders of magnitude above tol.
        if (hi - lo <= tol && std::abs(r_mid) <= tol) break;
        if (hi - lo <= 4e-17 * std::max(1.0, std::abs(mid))) break;
        if ((r_mid < 0.0) == (r_lo < 0.0)) {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
        }
    }
    sol.kappa_star = mid;
    sol.residual_at_root = r_mid;
    sol.iterations = it;
    return sol;
}

} // namespace

double SolvableRange::total_measure() const {
    double sum = 0.0;
    for (const auto& [lo, hi] : intervals) sum += hi - lo;
    return sum;
}

double additivity_residual(double p, double kappa, QIndex q, double z_mag) {
    const StateParams params{p, kappa, z_mag, 0.0};
    const auto feas = is_feasible(params);
    if (!feas.ok)
        throw std::domain_error("additivity_residual: infeasible parameters: " +
                                feas.violations.front());
    return joint_q_entropy(params, q) - 2.0 * marginal_q_entropy(p, q);
}

std::vector<AdditivitySolution> solve_kappa(double p, QIndex q, double z_mag, double tol) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("solve_kappa: p outside [0,1]");
    if (z_mag < 0.0) throw std::invalid_argument("solve_kappa: z_mag < 0");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_kappa: tol must be positive");

    // Degenerate marginals: both sides of the condition vanish only for the
    // pure product state.
    if (p == 0.0 || p == 1.0) {
        if (z_mag == 0.0) return {AdditivitySolution{0.0, 0.0, {0.0, 0.0}, 0, true}};
        return {};
    }

    const auto interval = feasible_kappa_interval(p, z_mag);
    if (!interval) return {};
    const double lo = interval->lo;
    const double hi = interval->hi;

    if (q.is_limit()) {
        // Von Neumann mutual entropy is strictly positive away from product
        // states, so the only solution is kappa = 0 at z = 0.
        if (z_mag != 0.0) return {};
        return {AdditivitySolution{0.0, additivity_residual(p, 0.0, q, 0.0), {0.0, 0.0}, 0, false}};
    }

    if (hi - lo <= 1e-15) {
        const double r = additivity_residual(p, lo, q, z_mag);
        if (std::abs(r) <= kBoundaryResidualTol)
            return {AdditivitySolution{lo, r, {lo, hi}, 0, true}};
        return {};
    }

    std::array<double, kScanCells + 1> ks{}, rs{};
    for (int i = 0; i <= kScanCells; ++i) {
        ks[i] = lo + (hi - lo) * static_cast<double>(i) / kScanCells;
        rs[i] = additivity_residual(p, ks[i], q, z_mag);
    }

    std::vector<AdditivitySolution> roots;
    std::array<bool, kScanCells + 1> taken{};
    for (int i = 0; i <= kScanCells; ++i) {
        const bool endpoint = i == 0 || i == kScanCells;
        if (std::abs(rs[i]) <= (endpoint ? kBoundaryResidualTol : 0.0)) {
            taken[i] = true;
            roots.push_back(AdditivitySolution{ks[i], rs[i], {ks[i], ks[i]}, 0, endpoint});
        }
    }
    for (int i = 0; i < kScanCells; ++i) {
        if (taken[i] || taken[i + 1]) continue;
        if ((rs[i] < 0.0) == (rs[i + 1] < 0.0)) continue;
        roots.push_back(bisect_bracket(p, q, z_mag, ks[i], ks[i + 1], rs[i], tol));
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.kappa_star < b.kappa_star; });
    return roots;
}

const AdditivitySolution& canonical_root(std::span<const AdditivitySolution> roots) {
    if (roots.empty()) throw std::invalid_argument("canonical_root: empty root set");
    const AdditivitySolution* best = nullptr;
    for (const auto& r : roots) {
        if (r.kappa_star < 0.0) continue;
        if (!best || r.kappa_star < best->kappa_star) best = &r;
    }
    if (!best) {
        for (const auto& r : roots)
            if (!best || std::abs(r.kappa_star) < std::abs(best->kappa_star)) best = &r;
    }
    return *best;
}

SolvableRange solvable_range(QIndex q, double z_mag, double p_step) {
    if (!(p_step > 0.0) || p_step > 0.1)
        throw std::invalid_argument("solvable_range: p_step must lie in (0, 0.1]");

    constexpr double kSolveTol = 1e-10;
    auto exists = [&](double p) {
        if (p <= 0.0 || p >= 1.0) return z_mag == 0.0;
        return !solve_kappa(p, q, z_mag, kSolveTol).empty();
    };

    std::vector<double> pts;
    std::vector<char> ok;
    for (int i = 1;; ++i) {
        const double x = static_cast<double>(i) * p_step;
        if (x >= 1.0 - 0.5 * p_step) break;
        pts.push_back(x);
        ok.push_back(exists(x) ? 1 : 0);
    }

    const double resolution = p_step / 100.0;
    auto refine = [&](double outside, double inside) {
        if (exists(outside)) return outside; // run extends to the domain edge
        double a = outside, b = inside;
        while (std::abs(b - a) > resolution) {
            const double m = 0.5 * (a + b);
            (exists(m) ? b : a) = m;
        }
        return b;
    };

    SolvableRange range{q.value(), z_mag, {}};
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n;) {
        if (!ok[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && ok[j + 1]) ++j;
        const double left_out = (i == 0) ? 0.0 : pts[i - 1];
        const double right_out = (j == n - 1) ? 1.0 : pts[j + 1];
        range.intervals.emplace_back(refine(left_out, pts[i]), refine(right_out, pts[j]));
        i = j + 1;
    }
    return range;
}

} // namespace tsx
