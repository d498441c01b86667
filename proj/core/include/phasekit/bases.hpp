#pragma once

#include "phasekit/relations.hpp"

namespace phasekit {

// Alternative function systems on the half-period [0, pi), plus the discrete
// symmetries and ladder maps that connect the rotor picture to the oscillator
// picture. Each family is orthonormal under its own weight w on [0, pi):
//
//   family      f_n(theta)                weight w
//   sg_cosine   sin((n+1) theta)          2/pi
//   z2_cosine   1 (n=0), sqrt(2) cos(n theta)  1/pi
//   half_sine   sqrt(2) sin((n+1/2) theta)     1/pi
//
// so integral_0^pi w f_m f_n dtheta = delta_{mn} for every family.

enum class BasisFamily { sg_cosine, z2_cosine, half_sine };

// f_n(theta) for theta in [0, pi), n >= 0.
double basis_wavefunction(BasisFamily family, std::size_t n, double theta);

// The family's orthonormality weight on [0, pi).
double basis_weight(BasisFamily family);

// Mode reflection. Plain parity maps c_l -> c_{-l}; it is an involution on
// integer lattices and rejects half-integer ones (no fixed lattice point).
// Signed parity maps c_l -> -c_{-l} and is the natural reflection on
// half-integer lattices; it is accepted on both.
ModeExpansion parity_apply(const ModeExpansion& state, bool signed_parity = false);

// Projects onto the +1 eigenspace of parity ((1 + P)/2, renormalized).
// Unsigned on integer lattices; signed on half-integer lattices (and allowed
// on integer ones, where it annihilates parity-even states such as |0>).
// Raises DegenerateProjection when the projection is the zero vector.
ModeExpansion z2_symmetrize(const ModeExpansion& state, bool signed_parity = false);

// Oscillator ladder maps on physical states (integer modes, l_min >= 0):
//   lower: c'_m = sqrt(m+1) c_{m+1}   (annihilation; |0> maps to zero)
//   raise: c'_m = sqrt(m)   c_{m-1}   (creation)
// Results are not normalized; raise(lower(|n>)) = n |n>.
enum class LadderDirection { lower, raise };
ModeExpansion ladder_apply(const ModeExpansion& state, LadderDirection dir);

// Unit mode shift on the full lattice, c'_l = c_{l +/- 1} (down/up). Exactly
// norm-preserving; the inverse of the other direction.
enum class ShiftDirection { down, up };
ModeExpansion shift_apply(const ModeExpansion& state, ShiftDirection dir);

// Harmonic evolution of a physical state: c_n -> e^{-i (n + 1/2) omega t} c_n.
// Rotates the phase density rigidly by omega*t and preserves all windowed
// statistics up to that rotation.
ModeExpansion time_evolve(const ModeExpansion& state, double omega, double t);

// Cross-family change-of-basis matrix,
//   U_{mn} = integral_0^pi sqrt(w_A w_B) fA_m(theta) fB_n(theta) dtheta,
// by composite trapezoid quadrature at quad_n, 2 quad_n, and 4 quad_n panels
// (quad_n >= 16 N). The entry changes across the two panel doublings must
// shrink at the trapezoid rate, else ResolutionError; the returned entries are
// the Richardson combination of the two finest levels (composite Simpson),
// leaving quadrature error far below the truncation effects.
// The unitarity defect ||U^dag U - I||_max of the returned block is reported.
// It vanishes for same-family blocks but is truncation-limited (~1/N) for
// cross-family blocks, whose overlaps decay only at first order.
struct OverlapMatrixResult {
    OperatorMatrix matrix;        // N x N, mode range [0, N-1]
    double unitarity_defect = 0.0;
};
OverlapMatrixResult overlap_matrix(BasisFamily family_a, BasisFamily family_b,
                                   std::size_t n, std::size_t quad_n);

} // namespace phasekit
