#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "phasekit/mode_expansion.hpp"

namespace testsup {

// Reproducible random normalized states for property tests. Only same-binary
// reproducibility is needed here, so the standard generator suffices.
inline phasekit::ModeExpansion random_mode_state(std::uint64_t seed, std::size_t n_modes,
                                                 std::int64_t l_min) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<phasekit::cplx> c(n_modes);
    for (auto& z : c) z = {gauss(rng), gauss(rng)};
    phasekit::ModeExpansion st(l_min, std::move(c));
    st.renormalize();
    return st;
}

} // namespace testsup
