#include "tsx/sampling.hpp"

#include <numbers>

namespace tsx {

StateParams sample_feasible(DeterministicRng& rng, bool with_phase) {
    StateParams params;
    params.p = rng.uniform01();
    const auto interval = feasible_kappa_interval(params.p, 0.0);
    params.kappa = rng.uniform(interval->lo, interval->hi);
    params.z_mag = rng.uniform(0.0, interval->hi - params.kappa);
    params.z_phase = with_phase ? rng.uniform(0.0, 2.0 * std::numbers::pi) : 0.0;
    return params;
}

} // namespace tsx
