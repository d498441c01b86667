#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include "phasekit/mode_expansion.hpp"

namespace phasekit {

// Damped (Abel-regularized) circle sums and their closed forms. The damping
// parameter eps > 0 suppresses mode n by e^{-|n| eps}; the automatic cutoff
// n_max is the smallest n with e^{-n eps} < 1e-16, capped at 1e7 terms.

struct SeriesRegularization {
    double eps = 0.0;
    std::int64_t n_max = 0;           // terms summed per side
    double convergence_estimate = 0.0; // bound on the neglected tail
};

std::int64_t auto_term_cutoff(double eps);
inline constexpr std::int64_t term_cap = 10'000'000;

// Closed form of the two-sided damped exponential sum
//   sum_{n in Z} e^{-|n| eps} e^{i n theta}
//     = (1 - e^{-2 eps}) / (1 + e^{-2 eps} - 2 e^{-eps} cos(theta)).
// Peak height 2/eps + O(1) at theta = 0; mass 1 under d(theta)/(2*pi).
double poisson_kernel(double theta, double eps);

// Damped odd sum  sum_{n >= 1} 2 e^{-n eps} sin(n theta), summed term by term
// to the automatic cutoff plus the exact geometric remainder of the truncated
// tail. Tends to cot(theta/2) as eps -> 0.
double sine_cot_sum(double theta, double eps);

// Generic regularized sum  sum_{n in Z} rule(n) e^{-|n| eps} e^{i n theta}.
// The rule is evaluated lazily per term. Raises ConvergenceError when the
// damped term magnitudes are not decreasing at the cutoff.
struct RegularizedSum {
    cplx value;
    SeriesRegularization reg;
};
RegularizedSum regularized_sum(const std::function<cplx(std::int64_t)>& rule,
                               double theta, double eps,
                               std::int64_t n_max_override = 0);

// Damped overlap kernels of the basis families on [0, pi). Each family's
// kernel is the damped realization of its completeness relation:
//   sg_cosine:    sum_{k>=1} 2 e^{-k eps} sin(k theta) sin(k phi)
//   nonneg_phase: sum_{n>=0} e^{-n eps} e^{i n (theta - phi)}
//   z2_cosine:    P_eps(theta-phi) + P_eps(theta+phi)      (P = poisson_kernel)
//   half_sine:    half-integer delta difference,
//                 sum_{n>=0} 2 e^{-(n+1/2) eps} [cos((n+1/2)(theta-phi))
//                                               - cos((n+1/2)(theta+phi))]
// Real families return a vanishing imaginary part. theta and phi must lie in
// [0, pi) for the three reflection families; nonneg_phase accepts any angles.
enum class OverlapFamily { sg_cosine, nonneg_phase, z2_cosine, half_sine };

cplx overlap_kernel(OverlapFamily family, double theta, double phi, double eps);

} // namespace phasekit
