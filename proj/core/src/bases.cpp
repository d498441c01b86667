#include "phasekit/bases.hpp"

#include <cmath>
#include <numbers>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

// Entry budget for the quadrature tables of overlap_matrix.
constexpr std::size_t table_entry_cap = std::size_t(1) << 26;

void require_physical(const ModeExpansion& state, const char* who) {
    if (state.half_integer())
        throw UnsupportedInput(std::string(who) + ": integer-mode states only");
    if (state.l_min_int() < 0)
        throw UnsupportedInput(std::string(who) + ": modes must be nonnegative");
}

} // namespace

double basis_wavefunction(BasisFamily family, std::size_t n, double theta) {
    if (!std::isfinite(theta)) throw InvalidInput("basis_wavefunction: theta must be finite");
    switch (family) {
        case BasisFamily::sg_cosine:
            return std::sin(double(n + 1) * theta);
        case BasisFamily::z2_cosine:
            return n == 0 ? 1.0 : sqrt2 * std::cos(double(n) * theta);
        case BasisFamily::half_sine:
            return sqrt2 * std::sin((double(n) + 0.5) * theta);
    }
    throw InvalidInput("basis_wavefunction: unknown family");
}

double basis_weight(BasisFamily family) {
    switch (family) {
        case BasisFamily::sg_cosine:
            return 2.0 / pi;
        case BasisFamily::z2_cosine:
        case BasisFamily::half_sine:
            return 1.0 / pi;
    }
    throw InvalidInput("basis_weight: unknown family");
}

ModeExpansion parity_apply(const ModeExpansion& state, bool signed_parity) {
    if (!signed_parity && state.half_integer())
        throw UnsupportedInput(
            "parity_apply: plain parity is undefined on half-integer lattices; use signed "
            "parity");
    std::vector<cplx> rev(state.coeffs().rbegin(), state.coeffs().rend());
    if (signed_parity)
        for (auto& c : rev) c = -c;
    ModeExpansion out = ModeExpansion::from_twice_index(-state.twice_l_max(), std::move(rev));
    out.set_normalized(state.normalized());
    out.set_tail_bound(state.tail_bound());
    return out;
}

ModeExpansion z2_symmetrize(const ModeExpansion& state, bool signed_parity) {
    const ModeExpansion mirrored = parity_apply(state, signed_parity);

    const std::int64_t lo = std::min(state.twice_l_min(), mirrored.twice_l_min());
    const std::int64_t hi = std::max(state.twice_l_max(), mirrored.twice_l_max());
    std::vector<cplx> sum(std::size_t((hi - lo) / 2 + 1), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < state.size(); ++k)
        sum[std::size_t((state.twice_l_min() + 2 * std::int64_t(k) - lo) / 2)] +=
            0.5 * state[k];
    for (std::size_t k = 0; k < mirrored.size(); ++k)
        sum[std::size_t((mirrored.twice_l_min() + 2 * std::int64_t(k) - lo) / 2)] +=
            0.5 * mirrored[k];

    ModeExpansion proj = ModeExpansion::from_twice_index(lo, std::move(sum)).trimmed();
    if (proj.norm_squared() < 1e-20)
        throw DegenerateProjection(
            "z2_symmetrize: the state has no component in the symmetric sector");
    ModeExpansion out = proj;
    out.renormalize();
    out.set_tail_bound(state.tail_bound());
    return out;
}

ModeExpansion ladder_apply(const ModeExpansion& state, LadderDirection dir) {
    require_physical(state, "ladder_apply");
    const std::int64_t lo = state.l_min_int();
    const std::int64_t hi = state.l_max_int();

    if (dir == LadderDirection::lower) {
        if (hi == 0) {
            ModeExpansion out(0, {cplx{0.0, 0.0}});
            out.set_normalized(false);
            return out;
        }
        const std::int64_t new_lo = std::max<std::int64_t>(0, lo - 1);
        std::vector<cplx> c(std::size_t(hi - new_lo), cplx{0.0, 0.0});
        for (std::int64_t m = new_lo; m <= hi - 1; ++m) {
            const std::int64_t src = m + 1 - lo;
            if (src >= 0 && src < std::int64_t(state.size()))
                c[std::size_t(m - new_lo)] = std::sqrt(double(m + 1)) * state[std::size_t(src)];
        }
        ModeExpansion out(new_lo, std::move(c));
        out.set_normalized(false);
        out.set_tail_bound(state.tail_bound());
        return out;
    }

    std::vector<cplx> c(state.size(), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < state.size(); ++k) {
        const std::int64_t m = lo + std::int64_t(k) + 1;
        c[k] = std::sqrt(double(m)) * state[k];
    }
    ModeExpansion out(lo + 1, std::move(c));
    out.set_normalized(false);
    out.set_tail_bound(state.tail_bound());
    return out;
}

ModeExpansion shift_apply(const ModeExpansion& state, ShiftDirection dir) {
    const std::int64_t delta = dir == ShiftDirection::down ? -2 : 2;
    ModeExpansion out =
        ModeExpansion::from_twice_index(state.twice_l_min() + delta, state.coeffs());
    out.set_normalized(state.normalized());
    out.set_tail_bound(state.tail_bound());
    return out;
}

ModeExpansion time_evolve(const ModeExpansion& state, double omega, double t) {
    require_physical(state, "time_evolve");
    if (!std::isfinite(omega) || !std::isfinite(t))
        throw InvalidInput("time_evolve: omega and t must be finite");
    std::vector<cplx> c(state.size());
    for (std::size_t k = 0; k < state.size(); ++k) {
        const double n = state.mode_value(k);
        c[k] = state[k] * std::polar(1.0, -(n + 0.5) * omega * t);
    }
    ModeExpansion out(state.l_min_int(), std::move(c));
    out.set_normalized(state.normalized());
    out.set_tail_bound(state.tail_bound());
    return out;
}

namespace {

// Composite trapezoid values of every basis function of one family on the
// nodes theta_j = j pi / panels, j = 0..panels.
std::vector<std::vector<double>> node_table(BasisFamily family, std::size_t n,
                                            std::size_t panels) {
    std::vector<std::vector<double>> table(n, std::vector<double>(panels + 1));
    const double h = pi / double(panels);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j <= panels; ++j)
            table[m][j] = basis_wavefunction(family, m, double(j) * h);
    return table;
}

std::vector<double> overlap_block(BasisFamily fa, BasisFamily fb, std::size_t n,
                                  std::size_t panels) {
    const auto ta = node_table(fa, n, panels);
    const auto tb = node_table(fb, n, panels);
    const double h = pi / double(panels);
    const double w = std::sqrt(basis_weight(fa) * basis_weight(fb));

    std::vector<double> u(n * n);
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto& a = ta[m];
            const auto& b = tb[k];
            double s = 0.5 * (a[0] * b[0] + a[panels] * b[panels]);
            for (std::size_t j = 1; j < panels; ++j) s += a[j] * b[j];
            u[m * n + k] = w * h * s;
        }
    }
    return u;
}

} // namespace

OverlapMatrixResult overlap_matrix(BasisFamily family_a, BasisFamily family_b, std::size_t n,
                                   std::size_t quad_n) {
    if (n == 0) throw InvalidInput("overlap_matrix: block size must be positive");
    if (quad_n < 16 * n)
        throw InvalidInput("overlap_matrix: quad_n must be at least 16 times the block size");
    if (n * (4 * quad_n + 1) > table_entry_cap)
        throw ResourceLimit("overlap_matrix: quadrature tables exceed the memory budget");

    const auto t1 = overlap_block(family_a, family_b, n, quad_n);
    const auto t2 = overlap_block(family_a, family_b, n, 2 * quad_n);
    const auto t4 = overlap_block(family_a, family_b, n, 4 * quad_n);

    double d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) {
        d1 = std::max(d1, std::abs(t2[i] - t1[i]));
        d2 = std::max(d2, std::abs(t4[i] - t2[i]));
    }
    // Trapezoid converges at second order here, so each panel doubling must
    // shrink the entry changes by about 4x once it is resolving the integrand.
    if (d2 > std::max(0.35 * d1, 1e-12))
        throw ResolutionError(
            "overlap_matrix: quadrature is not converging under panel doubling (changes " +
            std::to_string(d1) + " then " + std::to_string(d2) +
            "); retry with a larger quad_n");

    OverlapMatrixResult out{OperatorMatrix(0, std::int64_t(n) - 1), 0.0};
    std::vector<double> u(n * n);
    for (std::size_t i = 0; i < n * n; ++i) u[i] = (4.0 * t4[i] - t2[i]) / 3.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out.matrix(r, c) = cplx{u[r * n + c], 0.0};

    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            double g = 0.0;
            for (std::size_t j = 0; j < n; ++j) g += u[j * n + r] * u[j * n + c];
            const double target = r == c ? 1.0 : 0.0;
            out.unitarity_defect = std::max(out.unitarity_defect, std::abs(g - target));
        }
    }
    return out;
}

} // namespace phasekit
