#pragma once

#include <array>

#include "tsx/state.hpp"

// Concurrence of the X-state family: a closed form in (p, kappa, |z|), plus
// an independent oracle evaluating Wootters' spin-flip definition
// [Wootters, Phys. Rev. Lett. 80, 2245 (1998)] on the explicit 4x4 matrix.

namespace tsx {

// Branch of the closed form. With b = p(1-p) - kappa: "inner" applies for
// b >= |z| (the only branch reachable from feasible parameters, since
// feasibility forces b >= |z|); "outer" applies for b < |z| and signals an
// infeasible input.
enum class ConcurrenceBranch { inner, outer };

struct ConcurrenceResult {
    double value = 0.0;   // max(0, f_value)
    ConcurrenceBranch branch = ConcurrenceBranch::inner;
    double f_value = 0.0; // 2(|z| - sqrt(ad)) or 2(b - sqrt(ad)), a = p^2+kappa, d = (1-p)^2+kappa
};

// Closed-form concurrence. Defined for any parameters; feasibility is not
// checked here (an outer-branch result is itself the infeasibility
// diagnostic). NaN when a*d < 0.
ConcurrenceResult concurrence_closed_form(const StateParams& params);

// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y). Involutive.
DensityMatrix4 spin_flip(const DensityMatrix4& rho);

// 4x4 real matrix, row-major.
using Mat4r = std::array<double, 16>;

// Real form of an X-structured density matrix, obtained by a local diagonal
// unitary that rotates the phase of the inner coherence to zero. Eigenvalues
// and concurrence are unchanged. Matrices that are already real (any
// structure) pass through; complex matrices with coherence outside the
// (|10>,|01>) slot are rejected with std::invalid_argument.
Mat4r realify_x_state(const DensityMatrix4& rho);

// Eigenvalues of a real 4x4 matrix known to have a real nonnegative spectrum
// (such as rho * spin_flip(rho)), sorted descending. Method: similarity
// balancing, Householder reduction to Hessenberg form, then shifted QR
// iteration (convergence tolerance 1e-12, at most 200 sweeps). Eigenvalues in
// [-tol, 0) are clamped to 0; anything below -tol, a complex pair, or failure
// to converge throws (the input violated the spectrum precondition).
std::array<double, 4> eigenvalues_4x4(const Mat4r& m, double tol);

// Wootters concurrence max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) with
// l_i the descending eigenvalues of rho * spin_flip(rho). Requires a valid
// density matrix: Hermitian and unit trace within 1e-10, positive
// semidefinite within 1e-10 (std::domain_error otherwise).
double concurrence_wootters(const DensityMatrix4& rho);

} // namespace tsx
