#pragma once

#include <vector>

#include "phasekit/phase_density.hpp"

namespace phasekit {

// Windowed circular statistics. The window with origin alpha is the half-open
// arc (alpha - pi, alpha + pi]; theta is read as a real coordinate on that arc,
//
//   <theta>_alpha   = integral_window d(theta)/(2 pi) theta rho(theta)
//   Var_alpha(theta)= <theta^2>_alpha - <theta>_alpha^2.
//
// The window origin is an extremum of the variance exactly when
// <theta>_alpha = alpha; an extremum is a minimum when the density at the
// window edge rho(pi + alpha) is below the uniform level 1, a maximum above it.
// The minimized variance never exceeds pi^2/3, the uniform-density value.

// Reduces an angle to the canonical window origin in [0, 2*pi).
double canonical_alpha(double alpha);

enum class ExtremumKind { non_extremal, minimum, maximum, flat };

struct WindowedStats {
    double alpha = 0.0;        // canonical window origin
    double mean = 0.0;         // windowed mean, lies in (alpha - pi, alpha + pi]
    double variance = 0.0;
    double edge_density = 0.0; // rho(pi + alpha)
    ExtremumKind kind = ExtremumKind::non_extremal;
};

struct UncertaintyResult {
    double alpha0 = 0.0;              // minimizing window origin, canonical
    double delta_theta = 0.0;         // sqrt of the minimized variance
    double variance = 0.0;
    double edge_density_at_min = 0.0;
    std::size_t n_extrema_found = 0;
};

// Shared evaluation engine. For mode states the windowed moments collapse to
// density-autocorrelation sums,
//   mean(alpha)     = alpha + T1,  T1 = sum_{m>=1} (-1)^m (2/m)   Im(d_m e^{i m alpha})
//   variance(alpha) = pi^2/3 + sum_{m>=1} (-1)^m (4/m^2) Re(d_m e^{i m alpha}) - T1^2
// built once per state in O(M^2) (FFT above the mode threshold), then O(M) per
// window origin. Piecewise densities use exact arc integrals instead.
class WindowAnalyzer {
public:
    explicit WindowAnalyzer(const ModeExpansion& state);
    explicit WindowAnalyzer(const PhaseDensity& density);

    double mean(double alpha) const;
    double variance(double alpha) const;
    double residual(double alpha) const; // mean(alpha) - alpha
    double edge_density(double alpha) const;
    WindowedStats stats(double alpha) const;

private:
    std::vector<cplx> spectrum_;  // d_m, m >= 0 (mode path)
    std::vector<Arc> arcs_;       // piecewise path
    bool piecewise_ = false;

    struct Moments {
        double t1, t2;
    };
    Moments mode_sums(double alpha) const;
    void piecewise_moments(double alpha, double& m1, double& m2) const;
};

// Windowed statistics at one origin. The result's kind is non_extremal unless
// the extremality residual is below tol, in which case the edge density
// classifies it (within 1e-9 of the uniform level counts as flat).
WindowedStats windowed_stats(const ModeExpansion& src, double alpha, double tol = 1e-9);
WindowedStats windowed_stats(const PhaseDensity& src, double alpha, double tol = 1e-9);

// <theta>_alpha - alpha; zero exactly at variance extrema.
double extremality_residual(const ModeExpansion& src, double alpha);
double extremality_residual(const PhaseDensity& src, double alpha);

// All variance extrema over one period: samples the residual on a grid_n-point
// origin grid (grid_n >= 64), brackets sign changes, refines each root by
// bisection to |d alpha| < 1e-12, classifies by edge density, and returns the
// list sorted by variance. A residual that is identically ~0 (uniform density)
// yields the single flat entry alpha = 0 with variance pi^2/3. Raises
// ResolutionError when no sign change was found on a non-flat residual.
std::vector<WindowedStats> find_extrema(const ModeExpansion& src, std::size_t grid_n = 512);
std::vector<WindowedStats> find_extrema(const PhaseDensity& src, std::size_t grid_n = 512);

// Global minimum of the windowed variance. Ties (equal variance within 1e-12)
// break toward the smallest canonical alpha.
UncertaintyResult phase_uncertainty(const ModeExpansion& src, std::size_t grid_n = 512);
UncertaintyResult phase_uncertainty(const PhaseDensity& src, std::size_t grid_n = 512);

// Brute-force cross-check: direct quadrature of the windowed moments on
// n_alpha window origins (n_alpha, n_theta >= 256), no closed forms and no
// root-finding; returns the minimizing grid origin. Mode densities are sampled
// once on a circular grid and integrated by Simpson's rule re-indexed per
// origin; piecewise densities are integrated piece by piece so arc boundaries
// never cross a panel.
UncertaintyResult grid_oracle(const ModeExpansion& src, std::size_t n_alpha, std::size_t n_theta);
UncertaintyResult grid_oracle(const PhaseDensity& src, std::size_t n_alpha, std::size_t n_theta);

} // namespace phasekit
