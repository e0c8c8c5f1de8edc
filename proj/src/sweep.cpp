#include "tsx/sweep.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "tsx/entanglement.hpp"
#include "tsx/entropy.hpp"

namespace tsx {

namespace {

void validate(const SweepGrid& grid) {
    if (grid.p_start < 0.0 || grid.p_end > 1.0 || grid.p_start > grid.p_end)
        throw std::invalid_argument("SweepGrid: need 0 <= p_start <= p_end <= 1");
    if (!(grid.p_step > 0.0)) throw std::invalid_argument("SweepGrid: p_step must be positive");
    if ((grid.p_end - grid.p_start) / grid.p_step > 1e7)
        throw std::invalid_argument("SweepGrid: p_step is too small for the p range");
    if (grid.q_values.empty() || grid.z_values.empty())
        throw std::invalid_argument("SweepGrid: q and z value lists must be nonempty");
    for (double q : grid.q_values) QIndex{q}; // throws on bad q
    for (double z : grid.z_values)
        if (z < 0.0) throw std::invalid_argument("SweepGrid: z values must be nonnegative");
}

SweepRecord evaluate_point(double p, QIndex q, double z_mag, double tol) {
    SweepRecord rec;
    rec.p = p;
    rec.q = q.value();
    rec.z_mag = z_mag;

    const auto roots = solve_kappa(p, q, z_mag, tol);
    rec.n_roots = static_cast<int>(roots.size());
    if (roots.empty()) return rec;

    const auto& canon = canonical_root(roots);
    rec.solvable = true;
    rec.kappa_star = canon.kappa_star;

    const StateParams params{p, canon.kappa_star, z_mag, 0.0};
    rec.concurrence = concurrence_closed_form(params).value;
    rec.mutual_cl = mutual_entropy_classical(params);
    rec.mutual_qu = mutual_entropy_quantum(params);
    rec.deficit = quantum_deficit(params);
    rec.s_q_joint = joint_q_entropy(params, q);
    rec.s_q_marginal = marginal_q_entropy(p, q);
    return rec;
}

} // namespace

std::vector<double> p_points(const SweepGrid& grid) {
    validate(grid);
    const double eps = grid.p_step * 1e-9;
    std::vector<double> pts;
    for (int i = 0;; ++i) {
        const double x = grid.p_start + static_cast<double>(i) * grid.p_step;
        if (x > grid.p_end + eps) break;
        if (!grid.include_endpoints && (std::abs(x) <= eps || std::abs(x - 1.0) <= eps)) continue;
        pts.push_back(x);
    }
    return pts;
}

std::vector<SweepRecord> run_sweep(const SweepGrid& grid) {
    validate(grid);
    const auto pts = p_points(grid);
    std::vector<SweepRecord> records;
    records.reserve(pts.size() * grid.q_values.size() * grid.z_values.size());
    for (double q : grid.q_values)
        for (double z : grid.z_values)
            for (double p : pts) records.push_back(evaluate_point(p, QIndex{q}, z, grid.tol));
    return records;
}

std::vector<SweepRecord> figure1_dataset(double z_mag, std::vector<double> q_values,
                                         double p_step) {
    SweepGrid grid;
    grid.p_start = 0.0;
    grid.p_end = 1.0;
    grid.p_step = p_step;
    grid.q_values = std::move(q_values);
    grid.z_values = {z_mag};
    return run_sweep(grid);
}

std::vector<SweepRecord> figure23_dataset(double q, double p_step, double z_step, double z_max) {
    if (!(z_step > 0.0)) throw std::invalid_argument("figure23_dataset: z_step must be positive");
    if (z_max / z_step > 1e7)
        throw std::invalid_argument("figure23_dataset: z_step is too small for the z range");
    SweepGrid grid;
    grid.p_start = 0.0;
    grid.p_end = 1.0;
    grid.p_step = p_step;
    grid.q_values = {q};
    const double eps = z_step * 1e-9;
    for (int j = 0;; ++j) {
        const double z = static_cast<double>(j) * z_step;
        if (z > z_max + eps) break;
        grid.z_values.push_back(z);
    }
    return run_sweep(grid);
}

std::vector<MonotonicityViolation> z_monotonicity_violations(
    const std::vector<SweepRecord>& records) {
    // (q, p) -> (z, solvable) history in record order; records are in
    // lexicographic (q, z, p) order, so z arrives ascending per key.
    std::map<std::pair<double, double>, std::vector<std::pair<double, bool>>> history;
    for (const auto& rec : records)
        history[{rec.q, rec.p}].emplace_back(rec.z_mag, rec.solvable);

    std::vector<MonotonicityViolation> violations;
    for (const auto& [key, zs] : history) {
        for (std::size_t i = 1; i < zs.size(); ++i) {
            if (zs[i].second && !zs[i - 1].second)
                violations.push_back({key.second, key.first, zs[i - 1].first, zs[i].first});
        }
    }
    return violations;
}

} // namespace tsx
