#pragma once

#include <optional>
#include <vector>

#include "tsx/additivity.hpp"
#include "tsx/state.hpp"

// Grid engine: kappa*(p) curves per q at fixed |z|, and (p, |z|) surfaces of
// kappa* and concurrence at fixed q. Every grid point yields one record;
// unsolvable points are recorded, not dropped.

namespace tsx {

struct SweepGrid {
    double p_start = 0.0;
    double p_end = 1.0;
    double p_step = 0.01;
    std::vector<double> q_values;
    std::vector<double> z_values;
    bool include_endpoints = false; // keep grid points at p = 0 and p = 1
    double tol = 1e-10;
};

struct SweepRecord {
    double p = 0.0;
    double q = 0.0;
    double z_mag = 0.0;
    bool solvable = false;
    std::optional<double> kappa_star;   // canonical root
    int n_roots = 0;
    std::optional<double> concurrence;  // analytics below evaluated at (p, kappa*, z)
    std::optional<double> mutual_cl;
    std::optional<double> mutual_qu;
    std::optional<double> deficit;
    std::optional<double> s_q_joint;
    std::optional<double> s_q_marginal;
};

// A grid point where solutions exist at some z but not at a smaller z on the
// same grid. Reported for inspection, never an error.
struct MonotonicityViolation {
    double p = 0.0;
    double q = 0.0;
    double z_smaller = 0.0;
    double z_larger = 0.0;
};

// p grid implied by the sweep grid (endpoints 0 and 1 dropped unless
// include_endpoints).
std::vector<double> p_points(const SweepGrid& grid);

// One record per (q, z, p) lattice point, in lexicographic (q, z, p) order.
// Deterministic: output is a pure function of the grid.
std::vector<SweepRecord> run_sweep(const SweepGrid& grid);

// kappa*(p) curves: p over (0,1) at fixed |z| for each q.
std::vector<SweepRecord> figure1_dataset(double z_mag,
                                         std::vector<double> q_values = {0.1, 0.3, 0.5, 0.7, 0.9},
                                         double p_step = 0.01);

// (p, z) surface at fixed q; z runs from 0 to z_max in z_step increments.
std::vector<SweepRecord> figure23_dataset(double q, double p_step, double z_step,
                                          double z_max = 0.5);

// Scan a record set for points that are solvable at a larger z but not at the
// preceding smaller z of the same (q, p).
std::vector<MonotonicityViolation> z_monotonicity_violations(const std::vector<SweepRecord>& records);

} // namespace tsx
