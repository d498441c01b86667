#include "phasekit/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

constexpr double pi = std::numbers::pi;

void check_tail_tol(double tail_tol, const char* who) {
    if (!(tail_tol > 0.0) || tail_tol > 1e-6)
        throw InvalidInput(std::string(who) + ": tail_tol must lie in (0, 1e-6]");
}

void check_mode_count(std::size_t count, const char* who) {
    if (count > mode_cap)
        throw ResourceLimit(std::string(who) + ": state needs " + std::to_string(count) +
                            " modes, above the cap of " + std::to_string(mode_cap));
}

} // namespace

ModeExpansion make_number_state(std::int64_t l) {
    ModeExpansion s(l, {cplx(1.0, 0.0)});
    s.set_normalized(true);
    return s;
}

ModeExpansion make_rotor_wavepacket(double eps, double beta, double tail_tol) {
    if (!(eps > 0.0) || !std::isfinite(eps) || !std::isfinite(beta))
        throw InvalidInput("make_rotor_wavepacket: requires eps > 0 and finite beta");
    check_tail_tol(tail_tol, "make_rotor_wavepacket");

    // |c_l|^2 = tanh(eps) e^{-2|l| eps}; symmetric tail mass beyond |l| = L is
    // 2 e^{-2(L+1) eps} / (1 + e^{-2 eps}).
    const double x = std::exp(-2.0 * eps);
    auto tail_mass = [&](double L) { return 2.0 * std::exp(-2.0 * (L + 1.0) * eps) / (1.0 + x); };

    double L_est = std::ceil(-std::log(tail_tol * (1.0 + x) / 2.0) / (2.0 * eps)) - 1.0;
    std::int64_t L = std::max<std::int64_t>(0, std::llround(L_est));
    while (tail_mass(double(L)) >= tail_tol) ++L;
    while (L > 0 && tail_mass(double(L - 1)) < tail_tol) --L;

    check_mode_count(std::size_t(2 * L + 1), "make_rotor_wavepacket");

    const double amp = std::sqrt(std::tanh(eps));
    std::vector<cplx> c(std::size_t(2 * L + 1));
    for (std::int64_t l = -L; l <= L; ++l) {
        const double mag = amp * std::exp(-std::abs(double(l)) * eps);
        c[std::size_t(l + L)] = std::polar(mag, -double(l) * beta);
    }
    ModeExpansion s(-L, std::move(c));
    const double tail = tail_mass(double(L));
    s.renormalize();
    s.set_tail_bound(tail);
    return s;
}

ModeExpansion make_two_mode_superposition(std::int64_t l, std::int64_t L,
                                          double gamma, double beta) {
    if (l == L) throw InvalidInput("make_two_mode_superposition: modes l and L must differ");
    if (!std::isfinite(gamma) || !std::isfinite(beta))
        throw InvalidInput("make_two_mode_superposition: gamma and beta must be finite");

    const std::int64_t lo = std::min(l, L);
    const std::int64_t hi = std::max(l, L);
    std::vector<cplx> c(std::size_t(hi - lo + 1), cplx(0.0, 0.0));
    c[std::size_t(l - lo)] = cplx(std::cos(gamma), 0.0);
    c[std::size_t(L - lo)] += std::polar(std::sin(gamma), -beta);
    ModeExpansion s(lo, std::move(c));
    s.set_normalized(true);
    return s.trimmed();
}

ModeExpansion make_coherent_phase_state(double zeta_abs, double zeta_arg, double tail_tol) {
    if (!(zeta_abs >= 0.0) || zeta_abs >= 1.0 || !std::isfinite(zeta_arg))
        throw InvalidInput("make_coherent_phase_state: requires 0 <= |zeta| < 1");
    check_tail_tol(tail_tol, "make_coherent_phase_state");

    if (zeta_abs == 0.0) return make_number_state(0);

    // |c_n|^2 = (1 - q) q^n with q = |zeta|^2; tail mass beyond n = N is q^{N+1}.
    const double q = zeta_abs * zeta_abs;
    const double n_est = std::log(tail_tol) / std::log(q);
    check_mode_count(std::size_t(std::min(n_est + 2.0, 2.0 * double(mode_cap))),
                     "make_coherent_phase_state");
    std::int64_t N = std::max<std::int64_t>(0, std::int64_t(std::ceil(n_est)) - 1);
    auto tail_mass = [&](std::int64_t n) { return std::pow(q, double(n + 1)); };
    while (tail_mass(N) >= tail_tol) ++N;
    while (N > 0 && tail_mass(N - 1) < tail_tol) --N;
    check_mode_count(std::size_t(N + 1), "make_coherent_phase_state");

    const double amp = std::sqrt(1.0 - q);
    std::vector<cplx> c(std::size_t(N + 1));
    for (std::int64_t n = 0; n <= N; ++n)
        c[std::size_t(n)] = std::polar(amp * std::pow(zeta_abs, double(n)), double(n) * zeta_arg);
    ModeExpansion s(0, std::move(c));
    const double tail = tail_mass(N);
    s.renormalize();
    s.set_tail_bound(tail);
    return s;
}

ModeExpansion make_coherent_state(double r, double beta, double tail_tol) {
    if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(beta))
        throw InvalidInput("make_coherent_state: requires finite r >= 0");
    check_tail_tol(tail_tol, "make_coherent_state");

    if (r == 0.0) return make_number_state(0);

    // Poisson weights p_n = e^{-r^2} r^{2n} / n!, accumulated in log space.
    // Stop once the geometric domination bound on the remaining tail is small:
    // for n + 2 > r^2, sum_{k > n} p_k <= p_{n+1} / (1 - r^2 / (n + 2)).
    const double lambda = r * r;
    const double log_norm = -0.5 * lambda;
    std::vector<double> log_mag;
    std::int64_t n = 0;
    double cumulative = 0.0;
    double tail = 1.0;
    for (;; ++n) {
        if (std::size_t(n) >= mode_cap)
            throw ResourceLimit("make_coherent_state: mode cap exceeded");
        const double lm = log_norm + double(n) * std::log(r) - 0.5 * std::lgamma(double(n) + 1.0);
        log_mag.push_back(lm);
        cumulative += std::exp(2.0 * lm);
        if (double(n) + 2.0 > lambda) {
            const double p_next = std::exp(2.0 * (log_norm + (double(n) + 1.0) * std::log(r) -
                                                  0.5 * std::lgamma(double(n) + 2.0)));
            tail = p_next / (1.0 - lambda / (double(n) + 2.0));
            if (tail < tail_tol) break;
        }
    }

    std::vector<cplx> c(log_mag.size());
    for (std::size_t k = 0; k < log_mag.size(); ++k)
        c[k] = std::polar(std::exp(log_mag[k]), -double(k) * beta);
    ModeExpansion s(0, std::move(c));
    s.renormalize();
    s.set_tail_bound(std::max(tail, 1.0 - cumulative));
    return s;
}

PhaseDensity make_two_peak_density(double delta) {
    if (!(delta > 0.0) || delta > pi)
        throw InvalidInput("make_two_peak_density: requires delta in (0, pi]");
    const double h = pi / delta;
    return PhaseDensity::piecewise({Arc{pi / 2 - delta / 2, delta, h},
                                    Arc{-pi / 2 - delta / 2, delta, h}});
}

PhaseDensity density_from_state(const ModeExpansion& state) {
    return PhaseDensity::from_state(state);
}

cplx eval_wavefunction(const ModeExpansion& state, double theta) {
    // Horner-style sweep in z = e^{i theta}, resynchronized against drift
    // every 256 modes. Works for both integer and half-integer lattices via
    // the doubled index: e^{i l theta} = e^{i (twice_l/2) theta}.
    const auto& c = state.coeffs();
    const cplx z = std::polar(1.0, theta);
    cplx acc = 0.0;
    cplx phase = std::polar(1.0, state.l_min() * theta);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if ((k & 255u) == 255u)
            phase = std::polar(1.0, (state.l_min() + double(k)) * theta);
        acc += c[k] * phase;
        phase *= z;
    }
    return acc;
}

std::vector<cplx> eval_wavefunction(const ModeExpansion& state, std::span<const double> thetas) {
    std::vector<cplx> out(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) out[i] = eval_wavefunction(state, thetas[i]);
    return out;
}

ProjectionResult project_nonnegative(const ModeExpansion& state) {
    const std::int64_t t_min = state.twice_l_min();
    const std::int64_t t_max = state.twice_l_max();
    ProjectionResult out;
    if (t_max < 0) {
        // Everything is negative: the projection is the zero vector.
        out.state = ModeExpansion::from_twice_index(state.half_integer() ? 1 : 0,
                                                    {cplx(0.0, 0.0)});
        out.state.set_normalized(false);
        out.discarded_mass = state.norm_squared();
        return out;
    }
    double dropped = 0.0;
    std::vector<cplx> kept;
    std::int64_t first_kept = t_min;
    for (std::size_t k = 0; k < state.size(); ++k) {
        const std::int64_t tl = t_min + 2 * std::int64_t(k);
        if (tl < 0) {
            dropped += std::norm(state[k]);
        } else {
            if (kept.empty()) first_kept = tl;
            kept.push_back(state[k]);
        }
    }
    out.state = ModeExpansion::from_twice_index(first_kept, std::move(kept));
    out.state.set_normalized(dropped == 0.0 && state.normalized());
    out.state.set_tail_bound(state.tail_bound());
    out.discarded_mass = dropped;
    return out;
}

} // namespace phasekit
