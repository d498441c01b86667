#include "phasekit/phase_density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phasekit/errors.hpp"
#include "phasekit/states.hpp"

namespace phasekit {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Offset of x above lo, folded into [0, 2*pi).
double fold_above(double x, double lo) {
    double r = std::fmod(x - lo, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

} // namespace

PhaseDensity PhaseDensity::from_state(ModeExpansion state) {
    state.require_normalized("PhaseDensity::from_state");
    PhaseDensity d;
    d.kind_ = Kind::from_modes;
    d.state_ = std::move(state);
    return d;
}

PhaseDensity PhaseDensity::piecewise(std::vector<Arc> arcs) {
    if (arcs.empty()) throw InvalidInput("PhaseDensity: at least one arc required");
    double mass = 0.0;
    for (const auto& a : arcs) {
        if (!std::isfinite(a.start) || !(a.width > 0.0) || a.width > two_pi + 1e-15 ||
            !(a.height >= 0.0) || !std::isfinite(a.height))
            throw InvalidInput("PhaseDensity: arc must have width in (0, 2*pi] and height >= 0");
        mass += a.height * a.width / two_pi;
    }
    if (std::abs(mass - 1.0) > 1e-12)
        throw InvalidInput("PhaseDensity: arcs integrate to " + std::to_string(mass) +
                           ", expected 1");

    // Overlap check modulo 2*pi: sort by folded start, then each arc must end
    // before the next begins (the last wraps against the first).
    std::vector<Arc> sorted = arcs;
    std::sort(sorted.begin(), sorted.end(),
              [](const Arc& a, const Arc& b) { return fold_above(a.start, 0.0) < fold_above(b.start, 0.0); });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Arc& cur = sorted[i];
        const Arc& nxt = sorted[(i + 1) % sorted.size()];
        const double gap = (i + 1 == sorted.size())
                               ? fold_above(nxt.start, 0.0) + two_pi - fold_above(cur.start, 0.0)
                               : fold_above(nxt.start, 0.0) - fold_above(cur.start, 0.0);
        if (sorted.size() > 1 && cur.width > gap + 1e-12)
            throw InvalidInput("PhaseDensity: arcs overlap");
    }

    PhaseDensity d;
    d.kind_ = Kind::piecewise;
    d.arcs_ = std::move(arcs);
    return d;
}

double PhaseDensity::value(double theta) const {
    if (kind_ == Kind::from_modes) return std::norm(eval_wavefunction(*state_, theta));
    for (const auto& a : arcs_) {
        const double off = fold_above(theta, a.start);
        if (off < a.width) return a.height;
    }
    return 0.0;
}

double PhaseDensity::total_mass() const {
    if (kind_ == Kind::from_modes) return state_->norm_squared();
    double mass = 0.0;
    for (const auto& a : arcs_) mass += a.height * a.width / two_pi;
    return mass;
}

} // namespace phasekit
