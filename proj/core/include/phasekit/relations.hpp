#pragma once

#include <string>
#include <vector>

#include "phasekit/phase_stats.hpp"

namespace phasekit {

// The number-phase uncertainty relation with its window boundary term,
//
//   DeltaL * Delta_alpha(theta) >= (1/2) |1 - rho(pi + alpha)|,
//
// exact for every normalized mode state and window origin. At the minimizing
// origin the right-hand side is (1/2)(1 - rho(pi + alpha0)) with
// rho(pi + alpha0) <= 1.

struct MomentumStats {
    double mean = 0.0;
    double std_dev = 0.0;
};

// Mean and standard deviation of the mode number. Requires a normalized state;
// tiny negative variances from rounding are clamped to zero.
MomentumStats momentum_stats(const ModeExpansion& state);

struct RelationReport {
    double alpha = 0.0;      // canonical window origin
    double lhs = 0.0;        // DeltaL * Delta_alpha(theta)
    double rhs = 0.0;        // (1/2) |1 - rho(pi + alpha)|
    double margin = 0.0;     // lhs - rhs
    bool satisfied = false;  // margin >= -1e-9 * max(1, lhs)
};

// Relation at an arbitrary window origin.
RelationReport check_relation_at(const ModeExpansion& state, double alpha);

// Relation at the variance-minimizing origin found by phase_uncertainty.
RelationReport check_relation_min(const ModeExpansion& state, std::size_t grid_n = 512);

// One CSV row per report: alpha,lhs,rhs,margin,satisfied.
std::string relation_csv_header();
std::string relation_csv_row(const RelationReport& r);

// Dense complex matrix over a contiguous integer mode range [l_min, l_max].
class OperatorMatrix {
public:
    OperatorMatrix(std::int64_t l_min, std::int64_t l_max);

    std::int64_t l_min() const { return l_min_; }
    std::int64_t l_max() const { return l_max_; }
    std::size_t dim() const { return dim_; }

    cplx& at(std::int64_t l, std::int64_t L);
    const cplx& at(std::int64_t l, std::int64_t L) const;

    cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const cplx& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    // max_{l,L} |A_{lL} - conj(A_{Ll})|
    double hermiticity_defect() const;

    // <state| A |state> for a state living inside [l_min, l_max].
    cplx expectation(const ModeExpansion& state) const;

private:
    std::int64_t l_min_, l_max_;
    std::size_t dim_;
    std::vector<cplx> data_;
};

// Matrix elements of the windowed angle operator on [l_min, l_max]:
//   <l| theta(alpha) |L> = alpha                                   (l == L)
//                        = i (-1)^{l-L} e^{-i (l-L) alpha} / (l-L) (l != L).
// Hermitian by construction; the expectation reproduces the windowed mean.
// Dimension is capped at 4096 (ResourceLimit above).
OperatorMatrix windowed_position_matrix(double alpha, std::int64_t l_min, std::int64_t l_max);

// Commutator of the mode-number operator with the windowed angle operator.
// Every diagonal entry is exactly zero and the off-diagonal entries equal
//   i e^{-i (l-L)(alpha + pi)},
// the matrix elements of -i (1 - delta_kernel(theta - alpha - pi)) restricted
// to the window; the reported errors are pure rounding (the number operator is
// diagonal, so no truncation artifact enters).
struct CommutatorReport {
    OperatorMatrix commutator;
    double max_offdiag_error = 0.0; // vs i e^{-i(l-L)(alpha+pi)}
    double max_diag_error = 0.0;    // vs 0
};
CommutatorReport commutator_check(double alpha, std::int64_t l_min, std::int64_t l_max);

// Expectation of the periodic delta kernel at the window edge,
// <delta(theta - alpha - pi)> = rho(pi + alpha); equals the edge density that
// enters the uncertainty relation's right-hand side.
double delta_term_expectation(const ModeExpansion& state, double alpha);

} // namespace phasekit
