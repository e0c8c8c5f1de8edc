#pragma once

#include <span>
#include <utility>
#include <vector>

#include "tsx/entropy.hpp"
#include "tsx/state.hpp"

// Solver for the q-additivity condition S_q(A,B) = 2 S_q(A): given (p, q, |z|),
// find the classical-correlation values kappa* at which the joint q-entropy of
// the correlated state equals the sum of the marginal q-entropies.

namespace tsx {

struct AdditivitySolution {
    double kappa_star = 0.0;
    double residual_at_root = 0.0;
    std::pair<double, double> bracket{0.0, 0.0}; // coarse-scan cell containing the root
    int iterations = 0;
    bool on_boundary = false; // root accepted at a feasibility-interval endpoint
};

struct SolvableRange {
    double q = 0.0;
    double z_mag = 0.0;
    std::vector<std::pair<double, double>> intervals; // disjoint, sorted, within [0,1]

    double total_measure() const;
};

// joint_q_entropy(p, kappa, z) - 2 * marginal_q_entropy(p). Zero exactly at
// additivity solutions. Throws std::domain_error for infeasible triples.
double additivity_residual(double p, double kappa, QIndex q, double z_mag);

// All roots of the residual over the feasible kappa interval, sorted by
// kappa. A 64-cell scan brackets sign changes; each bracket is bisected until
// the kappa interval is <= tol and the residual is <= tol (bisection is used
// because the residual's kappa-derivative diverges at feasibility edges for
// q < 1). Empty result means no solution. At q = 1 the condition holds only
// for the product state, so the root is kappa = 0 iff z_mag = 0. Roots closer
// together than 1/64 of the feasible interval are out of scope. Caveat: for
// a root lying within machine resolution of a feasibility edge the diverging
// slope caps the achievable residual at roughly 1e-8 regardless of tol; the
// kappa value itself is still converged and residual_at_root reports the
// honest figure.
std::vector<AdditivitySolution> solve_kappa(double p, QIndex q, double z_mag,
                                            double tol = 1e-10);

// The root downstream consumers plot: smallest |kappa| among the nonnegative
// roots (the branch continued from kappa = 0 at q = 1); when every root is
// negative, the smallest |kappa| overall. Precondition: roots nonempty.
const AdditivitySolution& canonical_root(std::span<const AdditivitySolution> roots);

// Subintervals of (0,1) on which solve_kappa finds at least one root,
// evaluated on the grid {p_step, 2 p_step, ..., 1 - p_step} and refined at
// the endpoints by bisection on solution existence to resolution p_step/100.
// p_step must lie in (0, 0.1].
SolvableRange solvable_range(QIndex q, double z_mag, double p_step);

} // namespace tsx
