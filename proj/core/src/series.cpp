#include "phasekit/series.hpp"

#include <cmath>
#include <numbers>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

constexpr double term_floor = 1e-16;
constexpr std::int64_t resync_stride = 4096;

void check_eps(double eps, const char* who) {
    if (!std::isfinite(eps) || eps <= 0.0)
        throw InvalidInput(std::string(who) + ": damping eps must be positive and finite");
}

// Compensated (Neumaier) accumulator.
struct Accum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// sum_{n=0}^{count-1} e^{-(n+offset) eps} e^{i (n+offset) delta}
cplx damped_exp_sum(double delta, double eps, double offset, std::int64_t count) {
    const cplx z = std::polar(std::exp(-eps), delta);
    cplx w = std::polar(std::exp(-offset * eps), offset * delta);
    Accum re, im;
    for (std::int64_t n = 0; n < count; ++n) {
        if (n > 0 && n % resync_stride == 0) {
            const double k = double(n) + offset;
            w = std::polar(std::exp(-k * eps), k * delta);
        }
        re.add(w.real());
        im.add(w.imag());
        w *= z;
    }
    return {re.value(), im.value()};
}

} // namespace

std::int64_t auto_term_cutoff(double eps) {
    check_eps(eps, "auto_term_cutoff");
    const double need = std::ceil(-std::log(term_floor) / eps);
    if (need >= double(term_cap)) return term_cap;
    return std::max<std::int64_t>(1, std::int64_t(need));
}

double poisson_kernel(double theta, double eps) {
    check_eps(eps, "poisson_kernel");
    if (!std::isfinite(theta)) throw InvalidInput("poisson_kernel: theta must be finite");
    const double x = std::exp(-eps);
    const double s = std::sin(0.5 * theta);
    const double one_minus_x = -std::expm1(-eps);
    const double denom = one_minus_x * one_minus_x + 4.0 * x * s * s;
    return (1.0 - x * x) / denom;
}

double sine_cot_sum(double theta, double eps) {
    check_eps(eps, "sine_cot_sum");
    if (!std::isfinite(theta)) throw InvalidInput("sine_cot_sum: theta must be finite");
    const std::int64_t n_max = auto_term_cutoff(eps);
    const double partial = 2.0 * damped_exp_sum(theta, eps, 1.0, n_max).imag();
    // The summed terms stop at n_max, but the target is the full damped sum;
    // the dropped tail is geometric with an exact closed form. It matters only
    // when the term cap truncated the loop early.
    const cplx z = std::polar(std::exp(-eps), theta);
    const double k = double(n_max + 1);
    const cplx tail = std::polar(std::exp(-k * eps), k * theta) / (1.0 - z);
    return partial + 2.0 * tail.imag();
}

RegularizedSum regularized_sum(const std::function<cplx(std::int64_t)>& rule, double theta,
                               double eps, std::int64_t n_max_override) {
    check_eps(eps, "regularized_sum");
    if (!std::isfinite(theta)) throw InvalidInput("regularized_sum: theta must be finite");
    std::int64_t n_max = n_max_override > 0 ? n_max_override : auto_term_cutoff(eps);
    if (n_max > term_cap)
        throw ResourceLimit("regularized_sum: requested " + std::to_string(n_max) +
                            " terms per side exceeds the cap of " + std::to_string(term_cap));

    const cplx c0 = rule(0);
    if (!std::isfinite(c0.real()) || !std::isfinite(c0.imag()))
        throw InvalidInput("regularized_sum: rule(0) is not finite");

    Accum re, im;
    re.add(c0.real());
    im.add(c0.imag());

    const cplx zp = std::polar(std::exp(-eps), theta);
    const cplx zm = std::conj(zp);
    cplx wp = zp, wm = zm;

    const std::int64_t half = n_max / 2;
    double mag_half = 0.0, mag_end = 0.0;
    const std::int64_t window = 16;

    for (std::int64_t n = 1; n <= n_max; ++n) {
        if (n % resync_stride == 0) {
            wp = std::polar(std::exp(-double(n) * eps), double(n) * theta);
            wm = std::conj(wp);
        }
        const cplx fp = rule(n);
        const cplx fm = rule(-n);
        if (!std::isfinite(fp.real()) || !std::isfinite(fp.imag()) ||
            !std::isfinite(fm.real()) || !std::isfinite(fm.imag()))
            throw InvalidInput("regularized_sum: rule(" + std::to_string(n) +
                               ") or its mirror is not finite");
        const cplx tp = fp * wp;
        const cplx tm = fm * wm;
        re.add(tp.real());
        re.add(tm.real());
        im.add(tp.imag());
        im.add(tm.imag());

        const double mag = std::max(std::abs(tp), std::abs(tm));
        if (n > half - window && n <= half) mag_half = std::max(mag_half, mag);
        if (n > n_max - window) mag_end = std::max(mag_end, mag);

        wp *= zp;
        wm *= zm;
    }

    if (mag_end > mag_half && mag_end > 1e-300)
        throw ConvergenceError(
            "regularized_sum: damped terms are not decreasing at the cutoff; the rule grows "
            "faster than the damping decays");

    RegularizedSum out;
    out.value = {re.value(), im.value()};
    out.reg.eps = eps;
    out.reg.n_max = n_max;
    const double x = std::exp(-eps);
    out.reg.convergence_estimate = mag_end * x / (1.0 - x);
    return out;
}

cplx overlap_kernel(OverlapFamily family, double theta, double phi, double eps) {
    check_eps(eps, "overlap_kernel");
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw InvalidInput("overlap_kernel: angles must be finite");
    if (family != OverlapFamily::nonneg_phase) {
        if (theta < 0.0 || theta >= std::numbers::pi || phi < 0.0 || phi >= std::numbers::pi)
            throw InvalidInput("overlap_kernel: reflection families require angles in [0, pi)");
    }

    const std::int64_t n_max = auto_term_cutoff(eps);
    const double dm = theta - phi;
    const double dp = theta + phi;

    switch (family) {
        case OverlapFamily::sg_cosine: {
            // sum_{k>=1} 2 e^{-k eps} sin(k theta) sin(k phi)
            //   = sum_{k>=1} e^{-k eps} [cos(k dm) - cos(k dp)]
            const double a = damped_exp_sum(dm, eps, 1.0, n_max).real();
            const double b = damped_exp_sum(dp, eps, 1.0, n_max).real();
            return {a - b, 0.0};
        }
        case OverlapFamily::nonneg_phase:
            return damped_exp_sum(dm, eps, 0.0, n_max + 1);
        case OverlapFamily::z2_cosine:
            return {poisson_kernel(dm, eps) + poisson_kernel(dp, eps), 0.0};
        case OverlapFamily::half_sine: {
            const double a = damped_exp_sum(dm, eps, 0.5, n_max).real();
            const double b = damped_exp_sum(dp, eps, 0.5, n_max).real();
            return {2.0 * (a - b), 0.0};
        }
    }
    throw InvalidInput("overlap_kernel: unknown family");
}

} // namespace phasekit
