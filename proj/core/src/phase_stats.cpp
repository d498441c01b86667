#include "phasekit/phase_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phasekit/errors.hpp"
#include "phasekit/states.hpp"

namespace phasekit {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double uniform_variance = pi * pi / 3.0;

// |residual| below this over a whole origin grid means the density is uniform.
constexpr double flat_residual_tol = 1e-11;
// Edge densities within this of the uniform level classify an extremum as flat.
constexpr double flat_edge_tol = 1e-9;
// Bisection width target for extremum refinement.
constexpr double alpha_refine_tol = 1e-12;
// Variance ties in the global minimum break toward the smaller origin.
constexpr double variance_tie_tol = 1e-12;

double fold_above(double x, double lo) {
    double r = std::fmod(x - lo, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

// Splits the arcs of a piecewise density into sub-intervals of the window
// (alpha - pi, alpha + pi], expressed in the window's own real coordinate.
struct Piece {
    double a, b, height;
};
std::vector<Piece> window_pieces(const std::vector<Arc>& arcs, double alpha) {
    const double lo = alpha - pi;
    std::vector<Piece> out;
    out.reserve(arcs.size() + 2);
    for (const auto& arc : arcs) {
        double off = fold_above(arc.start, lo);
        if (off == 0.0) off = two_pi; // start sits on the excluded bottom edge
        // First segment runs from lo + off in window coordinates but may have
        // entered from below: treat [off, off + width) and wrap at 2*pi.
        const double end = off + arc.width;
        if (end <= two_pi + 1e-15) {
            out.push_back({lo + off, lo + std::min(end, two_pi), arc.height});
        } else {
            out.push_back({lo + off, lo + two_pi, arc.height});
            out.push_back({lo, lo + (end - two_pi), arc.height});
        }
    }
    return out;
}

} // namespace

double canonical_alpha(double alpha) {
    double a = std::fmod(alpha, two_pi);
    if (a < 0.0) a += two_pi;
    return a;
}

WindowAnalyzer::WindowAnalyzer(const ModeExpansion& state)
    : spectrum_(density_fourier(state)), piecewise_(false) {}

WindowAnalyzer::WindowAnalyzer(const PhaseDensity& density) {
    if (density.kind() == PhaseDensity::Kind::from_modes) {
        spectrum_ = density_fourier(density.state());
        piecewise_ = false;
    } else {
        arcs_ = density.arcs();
        piecewise_ = true;
    }
}

WindowAnalyzer::Moments WindowAnalyzer::mode_sums(double alpha) const {
    // T1 = sum_{m>=1} (-1)^m (2/m)   Im(d_m e^{i m alpha})
    // T2 = sum_{m>=1} (-1)^m (4/m^2) Re(d_m e^{i m alpha})
    const cplx z = std::polar(1.0, alpha);
    cplx w = z;
    double t1 = 0.0, t2 = 0.0;
    double sign = -1.0;
    for (std::size_t m = 1; m < spectrum_.size(); ++m) {
        if ((m & 255u) == 0u) w = std::polar(1.0, double(m) * alpha);
        const cplx dw = spectrum_[m] * w;
        const double inv_m = 1.0 / double(m);
        t1 += sign * 2.0 * inv_m * dw.imag();
        t2 += sign * 4.0 * inv_m * inv_m * dw.real();
        sign = -sign;
        w *= z;
    }
    return {t1, t2};
}

void WindowAnalyzer::piecewise_moments(double alpha, double& m1, double& m2) const {
    double m0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (const auto& p : window_pieces(arcs_, alpha)) {
        m0 += p.height * (p.b - p.a) / two_pi;
        s1 += p.height * (p.b * p.b - p.a * p.a) / (2.0 * two_pi);
        s2 += p.height * (p.b * p.b * p.b - p.a * p.a * p.a) / (3.0 * two_pi);
    }
    m1 = s1 / m0;
    m2 = s2 / m0;
}

double WindowAnalyzer::mean(double alpha) const {
    const double a = canonical_alpha(alpha);
    if (!piecewise_) return a + mode_sums(a).t1;
    double m1, m2;
    piecewise_moments(a, m1, m2);
    return m1;
}

double WindowAnalyzer::variance(double alpha) const {
    const double a = canonical_alpha(alpha);
    if (!piecewise_) {
        const auto s = mode_sums(a);
        return uniform_variance + s.t2 - s.t1 * s.t1;
    }
    double m1, m2;
    piecewise_moments(a, m1, m2);
    return m2 - m1 * m1;
}

double WindowAnalyzer::residual(double alpha) const {
    const double a = canonical_alpha(alpha);
    if (!piecewise_) return mode_sums(a).t1;
    double m1, m2;
    piecewise_moments(a, m1, m2);
    return m1 - a;
}

double WindowAnalyzer::edge_density(double alpha) const {
    const double a = canonical_alpha(alpha);
    if (piecewise_) {
        const double theta = pi + a;
        for (const auto& arc : arcs_) {
            if (fold_above(theta, arc.start) < arc.width) return arc.height;
        }
        return 0.0;
    }
    // rho(pi + alpha) = d_0 + 2 sum_{m>=1} (-1)^m Re(d_m e^{i m alpha})
    const cplx z = std::polar(1.0, a);
    cplx w = z;
    double rho = spectrum_[0].real();
    double sign = -1.0;
    for (std::size_t m = 1; m < spectrum_.size(); ++m) {
        if ((m & 255u) == 0u) w = std::polar(1.0, double(m) * a);
        rho += sign * 2.0 * (spectrum_[m] * w).real();
        sign = -sign;
        w *= z;
    }
    return rho;
}

WindowedStats WindowAnalyzer::stats(double alpha) const {
    const double a = canonical_alpha(alpha);
    WindowedStats s;
    s.alpha = a;
    if (!piecewise_) {
        const auto m = mode_sums(a);
        s.mean = a + m.t1;
        s.variance = uniform_variance + m.t2 - m.t1 * m.t1;
    } else {
        double m1, m2;
        piecewise_moments(a, m1, m2);
        s.mean = m1;
        s.variance = m2 - m1 * m1;
    }
    s.edge_density = edge_density(a);
    s.kind = ExtremumKind::non_extremal;
    return s;
}

namespace {

ExtremumKind classify_edge(double edge) {
    if (std::abs(edge - 1.0) <= flat_edge_tol) return ExtremumKind::flat;
    return edge < 1.0 ? ExtremumKind::minimum : ExtremumKind::maximum;
}

WindowedStats stats_with_kind(const WindowAnalyzer& an, double alpha, double tol) {
    WindowedStats s = an.stats(alpha);
    if (std::abs(s.mean - s.alpha) < tol) s.kind = classify_edge(s.edge_density);
    return s;
}

std::vector<WindowedStats> find_extrema_impl(const WindowAnalyzer& an, std::size_t grid_n) {
    if (grid_n < 64) throw InvalidInput("find_extrema: grid_n must be at least 64");

    std::vector<double> res(grid_n);
    double max_abs = 0.0;
    for (std::size_t k = 0; k < grid_n; ++k) {
        res[k] = an.residual(two_pi * double(k) / double(grid_n));
        max_abs = std::max(max_abs, std::abs(res[k]));
    }

    if (max_abs <= flat_residual_tol) {
        // Uniform density: every origin is stationary; report the canonical one.
        WindowedStats s = an.stats(0.0);
        s.kind = ExtremumKind::flat;
        return {s};
    }

    std::vector<double> roots;
    for (std::size_t k = 0; k < grid_n; ++k) {
        const double ra = res[k];
        const double rb = res[(k + 1) % grid_n];
        double a = two_pi * double(k) / double(grid_n);
        double b = two_pi * double(k + 1) / double(grid_n);
        if (ra == 0.0) {
            roots.push_back(a);
            continue;
        }
        if (!(ra * rb < 0.0)) continue;
        double fa = ra;
        while (b - a > alpha_refine_tol) {
            const double m = 0.5 * (a + b);
            const double fm = an.residual(m);
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            if (fa * fm < 0.0) {
                b = m;
            } else {
                a = m;
                fa = fm;
            }
        }
        roots.push_back(0.5 * (a + b));
    }

    if (roots.empty())
        throw ResolutionError(
            "find_extrema: no extremum bracketed; the residual changes sign between grid "
            "points finer than the current grid. Retry with a larger grid_n.");

    std::sort(roots.begin(), roots.end());
    std::vector<WindowedStats> out;
    for (double r : roots) {
        if (!out.empty() && r - out.back().alpha < 1e-9) continue;
        if (r > two_pi - 1e-9 && !out.empty() && out.front().alpha < 1e-9) continue;
        WindowedStats s = an.stats(r);
        s.kind = classify_edge(s.edge_density);
        out.push_back(s);
    }

    std::sort(out.begin(), out.end(), [](const WindowedStats& x, const WindowedStats& y) {
        if (x.variance != y.variance) return x.variance < y.variance;
        return x.alpha < y.alpha;
    });
    return out;
}

UncertaintyResult phase_uncertainty_impl(const WindowAnalyzer& an, std::size_t grid_n) {
    const auto extrema = find_extrema_impl(an, grid_n);
    double best_var = 0.0;
    bool have = false;
    for (const auto& e : extrema) {
        if (e.kind == ExtremumKind::minimum || e.kind == ExtremumKind::flat) {
            if (!have || e.variance < best_var) {
                best_var = e.variance;
                have = true;
            }
        }
    }
    if (!have)
        throw ResolutionError(
            "phase_uncertainty: no variance minimum resolved; retry with a larger grid_n.");

    const WindowedStats* pick = nullptr;
    for (const auto& e : extrema) {
        if (e.kind != ExtremumKind::minimum && e.kind != ExtremumKind::flat) continue;
        if (e.variance > best_var + variance_tie_tol) continue;
        if (!pick || e.alpha < pick->alpha) pick = &e;
    }

    UncertaintyResult r;
    r.alpha0 = pick->alpha;
    r.variance = pick->variance;
    r.delta_theta = std::sqrt(std::max(0.0, pick->variance));
    r.edge_density_at_min = pick->edge_density;
    r.n_extrema_found = extrema.size();
    return r;
}

// Oracle over a mode state: density sampled once on a circular grid of G
// points (G a multiple of n_alpha, even), then Simpson's rule over the window
// re-indexed for each origin so no value is recomputed.
UncertaintyResult oracle_modes(const ModeExpansion& state, std::size_t n_alpha, std::size_t n_theta) {
    std::size_t mult = (n_theta + n_alpha - 1) / n_alpha;
    if ((n_alpha * mult) % 2 != 0) ++mult;
    const std::size_t G = n_alpha * mult;
    const double h = two_pi / double(G);

    std::vector<double> rho(G);
    for (std::size_t j = 0; j < G; ++j)
        rho[j] = std::norm(eval_wavefunction(state, -pi + double(j) * h));

    const std::size_t stride = G / n_alpha;
    const double scale = h / (3.0 * two_pi);

    std::vector<double> var(n_alpha);
    std::vector<double> edge(n_alpha);
    for (std::size_t k = 0; k < n_alpha; ++k) {
        const double alpha = double(k * stride) * h;
        std::size_t j = k * stride;
        double pos = alpha - pi;
        // Simpson endpoints both land on the theta = alpha -/+ pi sample.
        const double top = pos + two_pi;
        double s0 = 2.0 * rho[j];
        double s1 = rho[j] * (pos + top);
        double s2 = rho[j] * (pos * pos + top * top);
        double coeff = 4.0;
        for (std::size_t i = 1; i < G; ++i) {
            ++j;
            if (j == G) j = 0;
            pos += h;
            const double wr = coeff * rho[j];
            s0 += wr;
            s1 += wr * pos;
            s2 += wr * pos * pos;
            coeff = 6.0 - coeff; // alternate 4, 2, 4, ...
        }
        const double i0 = s0 * scale;
        const double mean = s1 * scale / i0;
        var[k] = s2 * scale / i0 - mean * mean;
        edge[k] = rho[k * stride];
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < n_alpha; ++k)
        if (var[k] < var[best]) best = k;

    std::size_t minima = 0;
    for (std::size_t k = 0; k < n_alpha; ++k) {
        const double prev = var[(k + n_alpha - 1) % n_alpha];
        const double next = var[(k + 1) % n_alpha];
        if (var[k] < prev && var[k] <= next) ++minima;
    }

    UncertaintyResult r;
    r.alpha0 = canonical_alpha(double(best * stride) * h);
    r.variance = var[best];
    r.delta_theta = std::sqrt(std::max(0.0, var[best]));
    r.edge_density_at_min = edge[best];
    r.n_extrema_found = minima;
    return r;
}

// Oracle over a piecewise density: per origin, Simpson on each constant piece
// (panel boundaries never cross an arc edge, so the rule is exact there).
UncertaintyResult oracle_piecewise(const PhaseDensity& density, std::size_t n_alpha,
                                   std::size_t n_theta) {
    std::vector<double> var(n_alpha);
    std::vector<double> edge(n_alpha);
    for (std::size_t k = 0; k < n_alpha; ++k) {
        const double alpha = two_pi * double(k) / double(n_alpha);
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (const auto& p : window_pieces(density.arcs(), alpha)) {
            const double len = p.b - p.a;
            std::size_t panels = std::size_t(std::ceil(double(n_theta) * len / two_pi));
            panels = std::max<std::size_t>(2, panels + (panels % 2));
            const double hh = len / double(panels);
            double t0 = 0.0, t1 = 0.0, t2 = 0.0;
            for (std::size_t i = 0; i <= panels; ++i) {
                const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                const double th = p.a + double(i) * hh;
                t0 += w;
                t1 += w * th;
                t2 += w * th * th;
            }
            const double f = p.height * hh / (3.0 * two_pi);
            s0 += f * t0;
            s1 += f * t1;
            s2 += f * t2;
        }
        const double mean = s1 / s0;
        var[k] = s2 / s0 - mean * mean;
        edge[k] = density.value(pi + alpha);
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < n_alpha; ++k)
        if (var[k] < var[best]) best = k;
    std::size_t minima = 0;
    for (std::size_t k = 0; k < n_alpha; ++k) {
        const double prev = var[(k + n_alpha - 1) % n_alpha];
        const double next = var[(k + 1) % n_alpha];
        if (var[k] < prev && var[k] <= next) ++minima;
    }

    UncertaintyResult r;
    r.alpha0 = canonical_alpha(two_pi * double(best) / double(n_alpha));
    r.variance = var[best];
    r.delta_theta = std::sqrt(std::max(0.0, var[best]));
    r.edge_density_at_min = edge[best];
    r.n_extrema_found = minima;
    return r;
}

void check_oracle_sizes(std::size_t n_alpha, std::size_t n_theta) {
    if (n_alpha < 256 || n_theta < 256)
        throw InvalidInput("grid_oracle: n_alpha and n_theta must be at least 256");
}

} // namespace

WindowedStats windowed_stats(const ModeExpansion& src, double alpha, double tol) {
    src.require_normalized("windowed_stats");
    return stats_with_kind(WindowAnalyzer(src), alpha, tol);
}

WindowedStats windowed_stats(const PhaseDensity& src, double alpha, double tol) {
    return stats_with_kind(WindowAnalyzer(src), alpha, tol);
}

double extremality_residual(const ModeExpansion& src, double alpha) {
    src.require_normalized("extremality_residual");
    return WindowAnalyzer(src).residual(alpha);
}

double extremality_residual(const PhaseDensity& src, double alpha) {
    return WindowAnalyzer(src).residual(alpha);
}

std::vector<WindowedStats> find_extrema(const ModeExpansion& src, std::size_t grid_n) {
    src.require_normalized("find_extrema");
    return find_extrema_impl(WindowAnalyzer(src), grid_n);
}

std::vector<WindowedStats> find_extrema(const PhaseDensity& src, std::size_t grid_n) {
    return find_extrema_impl(WindowAnalyzer(src), grid_n);
}

UncertaintyResult phase_uncertainty(const ModeExpansion& src, std::size_t grid_n) {
    src.require_normalized("phase_uncertainty");
    return phase_uncertainty_impl(WindowAnalyzer(src), grid_n);
}

UncertaintyResult phase_uncertainty(const PhaseDensity& src, std::size_t grid_n) {
    return phase_uncertainty_impl(WindowAnalyzer(src), grid_n);
}

UncertaintyResult grid_oracle(const ModeExpansion& src, std::size_t n_alpha, std::size_t n_theta) {
    src.require_normalized("grid_oracle");
    check_oracle_sizes(n_alpha, n_theta);
    return oracle_modes(src, n_alpha, n_theta);
}

UncertaintyResult grid_oracle(const PhaseDensity& src, std::size_t n_alpha, std::size_t n_theta) {
    check_oracle_sizes(n_alpha, n_theta);
    if (src.kind() == PhaseDensity::Kind::from_modes)
        return oracle_modes(src.state(), n_alpha, n_theta);
    return oracle_piecewise(src, n_alpha, n_theta);
}

} // namespace phasekit
