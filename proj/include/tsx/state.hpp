#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

// Two-qubit X-state family rho(p, kappa, z):
//
//   diag entries (basis {|11>, |10>, |01>, |00>}):
//       p^2 + kappa,  p(1-p) - kappa,  p(1-p) - kappa,  (1-p)^2 + kappa
//   off-diagonal coherence z between |10> and |01>.
//
// p is the single-qubit probability of |1>, kappa shifts the product
// probabilities (classical pair correlation, may be negative), and z is a
// complex coherence parameter. All scalar quantities downstream depend on z
// only through |z|, which is why z is stored as (magnitude, phase).

namespace tsx {

using complexd = std::complex<double>;

// Inequalities at feasibility-region boundaries are checked with this slack
// so that states sitting exactly on an edge (e.g. a zero eigenvalue produced
// by the additivity solver) are accepted.
inline constexpr double kFeasibilitySlack = 1e-12;

struct StateParams {
    double p = 0.0;       // in [0,1]
    double kappa = 0.0;   // classical correlation shift
    double z_mag = 0.0;   // |z| >= 0
    double z_phase = 0.0; // arg(z) in [0, 2*pi)

    complexd z() const { return std::polar(z_mag, z_phase); }
};

// Eigenvalues of rho(p, kappa, z), in the fixed order
//   (p^2 + kappa, b + |z|, b - |z|, (1-p)^2 + kappa),  b = p(1-p) - kappa.
struct Spectrum {
    std::array<double, 4> lambda{};

    double sum() const { return lambda[0] + lambda[1] + lambda[2] + lambda[3]; }
};

// 4x4 complex matrix, row-major, basis order {|11>, |10>, |01>, |00>}.
struct DensityMatrix4 {
    std::array<complexd, 16> e{};

    complexd& operator()(int i, int j) { return e[4 * i + j]; }
    const complexd& operator()(int i, int j) const { return e[4 * i + j]; }

    complexd trace() const { return e[0] + e[5] + e[10] + e[15]; }
    double max_hermiticity_error() const;
    double max_abs_imag() const;
};

// 2x2 complex matrix, row-major, basis order {|1>, |0>}.
using Mat2c = std::array<complexd, 4>;

// Kronecker product a (x) b in the four-state basis above:
// index i = 2*ia + ib with ia, ib the single-qubit indices.
DensityMatrix4 kron(const Mat2c& a, const Mat2c& b);

struct FeasibilityReport {
    bool ok = true;
    std::vector<std::string> violations; // one entry per failed inequality
};

struct KappaInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct Marginals {
    std::array<double, 2> a{}; // (p, 1-p)
    std::array<double, 2> b{};
};

// Pseudo-spin expansion coefficients: s_z = 2p-1, c_zz = 4*kappa + (2p-1)^2,
// c_pm = z. Note c_zz - s_z^2 = 4*kappa, identifying kappa with the z-z pair
// correlation.
struct SpinCoefficients {
    double s_z = 0.0;
    double c_zz = 0.0;
    complexd c_pm{0.0, 0.0};
};

struct SeparableTerm {
    double weight = 0.0;
    Mat2c a_state{};
    Mat2c b_state{};
};

// Convex product decomposition of the diagonal (z = 0) state.
struct SeparableDecomposition {
    std::array<SeparableTerm, 4> terms{};
};

// (p11, p10, p01, p00). Always defined; sums to 1.
std::array<double, 4> diagonal_probs(const StateParams& params);

// Closed-form spectrum; independent of z_phase. Values may leave [0,1] for
// infeasible parameters (reported by is_feasible, not here).
Spectrum eigenvalues(const StateParams& params);

// True iff p is in [0,1] and all four eigenvalues lie in [0,1], everything
// within kFeasibilitySlack. Violations name each failed inequality.
FeasibilityReport is_feasible(const StateParams& params);

// Kappa interval on which (p, kappa, z_mag) is feasible:
//   [-min(p^2, (1-p)^2), p(1-p) - z_mag].
// Empty optional when the interval is void.
std::optional<KappaInterval> feasible_kappa_interval(double p, double z_mag);

DensityMatrix4 build_density_matrix(const StateParams& params);

// Both reduced states are diag(p, 1-p), independent of kappa and z.
Marginals marginals(const StateParams& params);

SpinCoefficients spin_decomposition(const StateParams& params);

// Inverse of spin_decomposition composed with build_density_matrix:
// reconstruct_from_spin(spin_decomposition(x)) == build_density_matrix(x)
// entrywise.
DensityMatrix4 reconstruct_from_spin(const SpinCoefficients& coeffs);

// Four-term convex sum of projector products reconstructing the diagonal
// state. Throws std::invalid_argument for z_mag != 0 and std::domain_error
// for infeasible parameters.
SeparableDecomposition separable_decomposition(const StateParams& params);

} // namespace tsx
