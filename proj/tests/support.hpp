#pragma once

#include <cmath>

#include "tsx/state.hpp"

namespace tsx::test {

inline double max_entry_diff(const DensityMatrix4& a, const DensityMatrix4& b) {
    double worst = 0.0;
    for (int k = 0; k < 16; ++k) worst = std::max(worst, std::abs(a.e[k] - b.e[k]));
    return worst;
}

// Partial trace over subsystem B; index convention i = 2*ia + ib with
// single-qubit index 0 <-> |1>. Returns (<1|rho_A|1>, <0|rho_A|0>).
inline std::array<double, 2> partial_trace_b_diag(const DensityMatrix4& rho) {
    std::array<double, 2> probs{};
    for (int ia = 0; ia < 2; ++ia) {
        complexd s{0.0, 0.0};
        for (int ib = 0; ib < 2; ++ib) s += rho(2 * ia + ib, 2 * ia + ib);
        probs[ia] = s.real();
    }
    return probs;
}

inline std::array<double, 2> partial_trace_a_diag(const DensityMatrix4& rho) {
    std::array<double, 2> probs{};
    for (int ib = 0; ib < 2; ++ib) {
        complexd s{0.0, 0.0};
        for (int ia = 0; ia < 2; ++ia) s += rho(2 * ia + ib, 2 * ia + ib);
        probs[ib] = s.real();
    }
    return probs;
}

} // namespace tsx::test
