#pragma once

#include <optional>
#include <vector>

#include "phasekit/mode_expansion.hpp"

namespace phasekit {

// One constant-height arc of a piecewise phase density. Angles are radians;
// the arc covers [start, start+width) with 0 < width <= 2*pi. Evaluation of a
// point on the boundary uses the half-open convention (start included).
struct Arc {
    double start = 0.0;
    double width = 0.0;
    double height = 0.0;
};

// A normalized probability density on the circle under the measure
// d(theta)/(2*pi): integral rho = 1, so the uniform density is rho == 1.
// Either derived from a ModeExpansion (rho = |Psi|^2) or piecewise constant.
class PhaseDensity {
public:
    enum class Kind { from_modes, piecewise };

    // rho = |Psi|^2 of a normalized state.
    static PhaseDensity from_state(ModeExpansion state);

    // Piecewise-constant density. Validates positivity, non-overlap of arcs
    // modulo 2*pi, and unit total mass to 1e-12.
    static PhaseDensity piecewise(std::vector<Arc> arcs);

    Kind kind() const { return kind_; }
    const ModeExpansion& state() const { return state_.value(); }
    const std::vector<Arc>& arcs() const { return arcs_; }

    // Pointwise density value. For mode-derived densities this evaluates the
    // wavefunction; for piecewise densities the arc containing theta (half-open).
    double value(double theta) const;

    // Total mass under d(theta)/(2*pi); 1 for valid densities.
    double total_mass() const;

private:
    PhaseDensity() = default;
    Kind kind_ = Kind::piecewise;
    std::optional<ModeExpansion> state_;
    std::vector<Arc> arcs_;
};

} // namespace phasekit
