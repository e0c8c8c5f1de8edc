#include "tsx/entropy.hpp"

#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>

namespace tsx {

namespace {

// Probabilities below this are treated as exact zeros before powers and logs;
// boundary spectra (a vanishing eigenvalue) occur routinely on feasibility
// edges.
constexpr double kZeroFloor = 1e-15;

double tsallis_raw(std::span<const double> probs, double q) {
    if (q == 1.0) {
        double s = 0.0;
        for (double x : probs)
            if (x > kZeroFloor) s -= x * std::log(x);
        return s;
    }
    double s = 0.0;
    for (double x : probs)
        if (x > kZeroFloor) s += std::pow(x, q);
    return (1.0 - s) / (q - 1.0);
}

void require_feasible(const StateParams& params, const char* where) {
    const auto feas = is_feasible(params);
    if (!feas.ok)
        throw std::domain_error(std::string(where) +
                                ": infeasible parameters: " + feas.violations.front());
}

double x_log_x(double x) { return x > kZeroFloor ? x * std::log(x) : 0.0; }

} // namespace

QIndex::QIndex(double q) : q_(q) {
    if (!(q > 0.0) || q > 1.0)
        throw std::invalid_argument("QIndex: q must lie in (0, 1]");
}

ProbabilityVector::ProbabilityVector(std::vector<double> values) : values_(std::move(values)) {
    double sum = 0.0;
    for (double& v : values_) {
        if (v < -kFeasibilitySlack)
            throw std::invalid_argument("ProbabilityVector: negative entry");
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("ProbabilityVector: entries do not sum to 1");
}

ProbabilityVector::ProbabilityVector(std::initializer_list<double> values)
    : ProbabilityVector(std::vector<double>(values)) {}

double tsallis_entropy(const ProbabilityVector& probs, QIndex q) {
    return tsallis_raw(probs.values(), q.value());
}

double joint_q_entropy(const StateParams& params, QIndex q) {
    require_feasible(params, "joint_q_entropy");
    const Spectrum spec = eigenvalues(params);
    return tsallis_raw(spec.lambda, q.value());
}

double marginal_q_entropy(double p, QIndex q) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("marginal_q_entropy: p outside [0,1]");
    const std::array<double, 2> m{p, 1.0 - p};
    return tsallis_raw(m, q.value());
}

double mutual_entropy_classical(const StateParams& params) {
    require_feasible(params, "mutual_entropy_classical");
    const std::array<double, 2> m{params.p, 1.0 - params.p};
    return 2.0 * tsallis_raw(m, 1.0) - tsallis_raw(diagonal_probs(params), 1.0);
}

double mutual_entropy_quantum(const StateParams& params) {
    require_feasible(params, "mutual_entropy_quantum");
    const std::array<double, 2> m{params.p, 1.0 - params.p};
    return 2.0 * tsallis_raw(m, 1.0) - tsallis_raw(eigenvalues(params).lambda, 1.0);
}

double quantum_deficit(const StateParams& params) {
    require_feasible(params, "quantum_deficit");
    const double b = params.p * (1.0 - params.p) - params.kappa;
    return 2.0 * x_log_x(b) - x_log_x(b + params.z_mag) - x_log_x(b - params.z_mag);
}

} // namespace tsx
