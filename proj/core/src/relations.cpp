#include "phasekit/relations.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

constexpr std::size_t matrix_dim_cap = 4096;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

MomentumStats momentum_stats(const ModeExpansion& state) {
    state.require_normalized("momentum_stats");
    double mean = 0.0, second = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) {
        const double p = std::norm(state[k]);
        const double l = state.mode_value(k);
        mean += p * l;
        second += p * l * l;
    }
    const double var = std::max(0.0, second - mean * mean);
    return {mean, std::sqrt(var)};
}

RelationReport check_relation_at(const ModeExpansion& state, double alpha) {
    state.require_normalized("check_relation_at");
    const double a = canonical_alpha(alpha);
    const WindowAnalyzer an(state);
    const double dl = momentum_stats(state).std_dev;
    const double dtheta = std::sqrt(std::max(0.0, an.variance(a)));

    RelationReport r;
    r.alpha = a;
    r.lhs = dl * dtheta;
    r.rhs = 0.5 * std::abs(1.0 - an.edge_density(a));
    r.margin = r.lhs - r.rhs;
    r.satisfied = r.margin >= -1e-9 * std::max(1.0, r.lhs);
    return r;
}

RelationReport check_relation_min(const ModeExpansion& state, std::size_t grid_n) {
    state.require_normalized("check_relation_min");
    const UncertaintyResult u = phase_uncertainty(state, grid_n);
    return check_relation_at(state, u.alpha0);
}

std::string relation_csv_header() { return "alpha,lhs,rhs,margin,satisfied"; }

std::string relation_csv_row(const RelationReport& r) {
    return g17(r.alpha) + "," + g17(r.lhs) + "," + g17(r.rhs) + "," + g17(r.margin) + "," +
           (r.satisfied ? "true" : "false");
}

OperatorMatrix::OperatorMatrix(std::int64_t l_min, std::int64_t l_max)
    : l_min_(l_min), l_max_(l_max) {
    if (l_max < l_min) throw InvalidInput("OperatorMatrix: l_max must be >= l_min");
    const std::int64_t d = l_max - l_min + 1;
    if (std::size_t(d) > matrix_dim_cap)
        throw ResourceLimit("OperatorMatrix: dimension " + std::to_string(d) +
                            " exceeds the cap of " + std::to_string(matrix_dim_cap));
    dim_ = std::size_t(d);
    data_.assign(dim_ * dim_, cplx{0.0, 0.0});
}

cplx& OperatorMatrix::at(std::int64_t l, std::int64_t L) {
    if (l < l_min_ || l > l_max_ || L < l_min_ || L > l_max_)
        throw InvalidInput("OperatorMatrix::at: index outside [l_min, l_max]");
    return data_[std::size_t(l - l_min_) * dim_ + std::size_t(L - l_min_)];
}

const cplx& OperatorMatrix::at(std::int64_t l, std::int64_t L) const {
    if (l < l_min_ || l > l_max_ || L < l_min_ || L > l_max_)
        throw InvalidInput("OperatorMatrix::at: index outside [l_min, l_max]");
    return data_[std::size_t(l - l_min_) * dim_ + std::size_t(L - l_min_)];
}

double OperatorMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
}

cplx OperatorMatrix::expectation(const ModeExpansion& state) const {
    state.require_normalized("OperatorMatrix::expectation");
    if (state.half_integer())
        throw UnsupportedInput("OperatorMatrix::expectation: integer-mode states only");
    if (state.l_min_int() < l_min_ || state.l_max_int() > l_max_)
        throw InvalidInput("OperatorMatrix::expectation: state range exceeds the matrix range");

    const std::size_t off = std::size_t(state.l_min_int() - l_min_);
    cplx acc{0.0, 0.0};
    for (std::size_t r = 0; r < state.size(); ++r) {
        cplx row{0.0, 0.0};
        for (std::size_t c = 0; c < state.size(); ++c)
            row += (*this)(off + r, off + c) * state[c];
        acc += std::conj(state[r]) * row;
    }
    return acc;
}

OperatorMatrix windowed_position_matrix(double alpha, std::int64_t l_min, std::int64_t l_max) {
    const double a = canonical_alpha(alpha);
    OperatorMatrix m(l_min, l_max);
    for (std::int64_t l = l_min; l <= l_max; ++l) {
        for (std::int64_t L = l_min; L <= l_max; ++L) {
            if (l == L) {
                m.at(l, L) = cplx{a, 0.0};
            } else {
                const double d = double(l - L);
                const double sign = ((l - L) % 2 == 0) ? 1.0 : -1.0;
                m.at(l, L) = cplx{0.0, sign / d} * std::polar(1.0, -d * a);
            }
        }
    }
    return m;
}

CommutatorReport commutator_check(double alpha, std::int64_t l_min, std::int64_t l_max) {
    const double a = canonical_alpha(alpha);
    const OperatorMatrix theta = windowed_position_matrix(a, l_min, l_max);

    CommutatorReport rep{OperatorMatrix(l_min, l_max), 0.0, 0.0};
    // [L, theta(alpha)]_{lL} = (l - L) theta_{lL}: the number operator is
    // diagonal, so the commutator is exact entrywise up to rounding.
    for (std::int64_t l = l_min; l <= l_max; ++l) {
        for (std::int64_t L = l_min; L <= l_max; ++L) {
            const cplx v = double(l - L) * theta.at(l, L);
            rep.commutator.at(l, L) = v;
            if (l == L) {
                rep.max_diag_error = std::max(rep.max_diag_error, std::abs(v));
            } else {
                // e^{-i d (alpha+pi)} = (-1)^d e^{-i d alpha}; the reduced form
                // keeps the reference angle small enough for 1e-15 agreement.
                const double d = double(l - L);
                const double sign = ((l - L) % 2 == 0) ? 1.0 : -1.0;
                const cplx expected = cplx{0.0, sign} * std::polar(1.0, -d * a);
                rep.max_offdiag_error = std::max(rep.max_offdiag_error, std::abs(v - expected));
            }
        }
    }
    return rep;
}

double delta_term_expectation(const ModeExpansion& state, double alpha) {
    state.require_normalized("delta_term_expectation");
    return WindowAnalyzer(state).edge_density(alpha);
}

} // namespace phasekit
