#pragma once

#include <span>
#include <vector>

#include "phasekit/mode_expansion.hpp"
#include "phasekit/phase_density.hpp"

namespace phasekit {

// Constructors for the state families studied by the library, plus pointwise
// evaluation and the non-negative-mode projector. Infinite families are
// truncated by tail mass and then renormalized; the discarded mass is recorded
// on the result as tail_bound(). Mode counts are capped.

inline constexpr std::size_t mode_cap = 1'000'000;

// |l>: single angular-momentum eigenstate. Uniform density, flat phase profile.
ModeExpansion make_number_state(std::int64_t l);

// Exponentially localized rotor packet peaked at theta = beta:
//   c_l = sqrt(tanh(eps)) * e^{-|l| eps} * e^{-i l beta},
// truncated at symmetric |l| <= L with tail mass < tail_tol.
// Requires eps > 0 and tail_tol in (0, 1e-6].
ModeExpansion make_rotor_wavepacket(double eps, double beta, double tail_tol);

// cos(gamma)|l> + sin(gamma) e^{-i beta}|L>, l != L. Exactly normalized;
// boundary zeros are trimmed, so gamma = 0 reduces to the number state |l>.
ModeExpansion make_two_mode_superposition(std::int64_t l, std::int64_t L,
                                          double gamma, double beta);

// Non-negative-mode geometric state, c_n = sqrt(1-|zeta|^2) zeta^n for n >= 0,
// zeta = zeta_abs * e^{i zeta_arg}, |zeta| < 1. |c_n|^2 is the geometric
// distribution with ratio q = |zeta|^2. Truncated at tail mass < tail_tol.
ModeExpansion make_coherent_phase_state(double zeta_abs, double zeta_arg, double tail_tol);

// Oscillator coherent state restricted to the phase problem:
//   c_n = e^{-r^2/2} r^n / sqrt(n!) * e^{-i n beta},  n >= 0,  r >= 0.
// |c_n|^2 is Poisson with mean r^2. Truncated at tail mass < tail_tol.
// Coefficients are built in log-space, so large r does not overflow n!.
ModeExpansion make_coherent_state(double r, double beta, double tail_tol);

// Two opposite arcs of width delta centered at +pi/2 and -pi/2, height pi/delta
// each (unit total mass). delta in (0, pi]; delta = pi gives the uniform density.
PhaseDensity make_two_peak_density(double delta);

// rho = |Psi|^2 wrapper; requires a normalized state.
PhaseDensity density_from_state(const ModeExpansion& state);

// Psi(theta) = sum_l c_l e^{i l theta} at each requested angle.
std::vector<cplx> eval_wavefunction(const ModeExpansion& state, std::span<const double> thetas);
cplx eval_wavefunction(const ModeExpansion& state, double theta);

// Keeps modes with l >= 0 (half-integer lattices: l >= 1/2). The projected
// state is NOT renormalized; the discarded mass rides along.
struct ProjectionResult {
    ModeExpansion state;
    double discarded_mass = 0.0;
};
ProjectionResult project_nonnegative(const ModeExpansion& state);

} // namespace phasekit
