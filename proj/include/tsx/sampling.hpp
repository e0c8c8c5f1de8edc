#pragma once

#include <cstdint>
#include <random>

#include "tsx/state.hpp"

// Seeded sampling over the full feasibility region. Uniform doubles are
// derived from raw mt19937_64 output so that sequences are identical across
// platforms and standard-library implementations.

namespace tsx {

class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    // in [0, 1)
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

// Draw p uniform on [0,1), kappa uniform on the feasible interval at z = 0,
// z_mag uniform on [0, p(1-p) - kappa], and (when with_phase) z_phase uniform
// on [0, 2*pi). The result is feasible by construction.
StateParams sample_feasible(DeterministicRng& rng, bool with_phase = true);

} // namespace tsx
