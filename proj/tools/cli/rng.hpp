#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "phasekit/mode_expansion.hpp"

namespace pkcli {

// Mixes a master seed with an item index so each work item owns an
// independent, scheduler-independent RNG stream (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Gaussian deviates via Box-Muller over mt19937_64. The standard library's
// normal_distribution is implementation-defined, which would break the
// byte-identical-output guarantee, so the transform is spelled out here.
class GaussianGen {
public:
    explicit GaussianGen(std::uint64_t seed) : eng_(seed) {}

    double uniform01() {
        // in (0, 1]; never 0 so log() below stays finite
        return double((eng_() >> 11) + 1) * 0x1p-53;
    }

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double uniform_angle() { return 2.0 * std::numbers::pi * (uniform01() - 0x1p-54); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Random normalized state with n_modes contiguous integer modes starting at
// l_min; complex-Gaussian coefficients, renormalized.
inline phasekit::ModeExpansion random_state(std::uint64_t seed, std::size_t n_modes,
                                            std::int64_t l_min) {
    GaussianGen g(seed);
    std::vector<phasekit::cplx> c(n_modes);
    for (auto& v : c) {
        const double re = g.next();
        const double im = g.next();
        v = {re, im};
    }
    phasekit::ModeExpansion state(l_min, std::move(c));
    state.renormalize();
    return state;
}

} // namespace pkcli
