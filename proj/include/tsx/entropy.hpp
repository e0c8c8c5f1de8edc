#pragma once

#include <initializer_list>
#include <vector>

#include "tsx/state.hpp"

// Tsallis q-entropies S_q = (1 - sum p_i^q) / (q - 1) for 0 < q < 1, with the
// Shannon / von Neumann limit -sum p_i ln p_i selected at q = 1. k = 1
// (natural log units) throughout.

namespace tsx {

// Entropic index restricted to (0, 1]; q = 1 means "use the limit formula".
class QIndex {
public:
    explicit QIndex(double q);

    double value() const { return q_; }
    bool is_limit() const { return q_ == 1.0; }

private:
    double q_;
};

// Probability vector: entries >= -1e-12 (small negatives are clamped to 0),
// sum within 1e-9 of 1. Construction throws std::invalid_argument otherwise.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> values);
    ProbabilityVector(std::initializer_list<double> values);

    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

// S_q of a probability vector. Probabilities below 1e-15 contribute zero
// (0^q = 0, 0 ln 0 = 0). Nonnegative.
double tsallis_entropy(const ProbabilityVector& probs, QIndex q);

// S_q of the state's eigenvalue spectrum (not the diagonal probabilities).
// Throws std::domain_error for infeasible parameters.
double joint_q_entropy(const StateParams& params, QIndex q);

// S_q of the marginal distribution (p, 1-p).
double marginal_q_entropy(double p, QIndex q);

// Mutual entropy S1(A) + S1(B) - S1(A,B) evaluated on the diagonal
// probabilities; ignores z. Nonnegative, zero iff kappa = 0.
double mutual_entropy_classical(const StateParams& params);

// Same, evaluated on the full spectrum; reduces to the classical value when
// z_mag = 0.
double mutual_entropy_quantum(const StateParams& params);

// Quantum deficit, with b = p(1-p) - kappa:
//   2 b ln b - (b+|z|) ln(b+|z|) - (b-|z|) ln(b-|z|)
// Equals mutual_entropy_classical - mutual_entropy_quantum. The signed value
// is returned: by strict convexity of x ln x it is <= 0, with equality iff
// z_mag = 0, even though it is often quoted as a nonnegative quantity.
double quantum_deficit(const StateParams& params);

} // namespace tsx
