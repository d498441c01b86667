#include "phasekit/mode_expansion.hpp"

#include <cmath>
#include <numbers>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

// Iterative radix-2 Cooley-Tukey, in place, n a power of two. Only used to
// accelerate the density autocorrelation for very wide states; the direct
// O(M^2) path below is the reference it is tested against.
void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / double(len);
        const cplx wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / double(n);
        for (auto& x : a) x *= inv;
    }
}

std::vector<cplx> autocorrelation_direct(const std::vector<cplx>& c) {
    const std::size_t m = c.size();
    std::vector<cplx> d(m);
    for (std::size_t lag = 0; lag < m; ++lag) {
        cplx acc = 0.0;
        for (std::size_t l = 0; l + lag < m; ++l) acc += std::conj(c[l]) * c[l + lag];
        d[lag] = acc;
    }
    return d;
}

std::vector<cplx> autocorrelation_fft(const std::vector<cplx>& c) {
    const std::size_t m = c.size();
    std::size_t k = 1;
    while (k < 2 * m) k <<= 1;
    std::vector<cplx> a(k, 0.0);
    for (std::size_t i = 0; i < m; ++i) a[i] = c[i];
    fft_pow2(a, false);
    for (auto& x : a) x = cplx(std::norm(x), 0.0);
    fft_pow2(a, true);
    // a[lag] is now sum_l conj(c_l) c_{l+lag}; zero padding kills the wrap.
    std::vector<cplx> d(a.begin(), a.begin() + std::ptrdiff_t(m));
    return d;
}

} // namespace

ModeExpansion::ModeExpansion(std::int64_t l_min, std::vector<cplx> coeffs)
    : twice_l_min_(2 * l_min), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidInput("ModeExpansion: empty coefficient list");
    validate_finite();
}

ModeExpansion ModeExpansion::from_twice_index(std::int64_t twice_l_min, std::vector<cplx> coeffs) {
    ModeExpansion s;
    s.twice_l_min_ = twice_l_min;
    s.coeffs_ = std::move(coeffs);
    if (s.coeffs_.empty()) throw InvalidInput("ModeExpansion: empty coefficient list");
    s.validate_finite();
    return s;
}

void ModeExpansion::validate_finite() const {
    for (const auto& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidInput("ModeExpansion: non-finite coefficient");
    }
}

double ModeExpansion::norm_squared() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return s;
}

double ModeExpansion::norm() const { return std::sqrt(norm_squared()); }

void ModeExpansion::renormalize() {
    const double n2 = norm_squared();
    if (n2 <= 0.0) throw InvalidInput("ModeExpansion: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : coeffs_) c *= inv;
    normalized_ = true;
}

ModeExpansion ModeExpansion::trimmed() const {
    std::size_t lo = 0;
    std::size_t hi = coeffs_.size();
    while (lo + 1 < hi && coeffs_[lo] == cplx(0.0, 0.0)) ++lo;
    while (hi > lo + 1 && coeffs_[hi - 1] == cplx(0.0, 0.0)) --hi;
    ModeExpansion out;
    out.twice_l_min_ = twice_l_min_ + 2 * std::int64_t(lo);
    out.coeffs_.assign(coeffs_.begin() + std::ptrdiff_t(lo), coeffs_.begin() + std::ptrdiff_t(hi));
    out.normalized_ = normalized_;
    out.tail_bound_ = tail_bound_;
    return out;
}

void ModeExpansion::require_normalized(const char* who, double tol) const {
    const double n2 = norm_squared();
    if (std::abs(n2 - 1.0) > tol) {
        throw InvalidInput(std::string(who) + ": state is not normalized (norm^2 = " +
                           std::to_string(n2) + ")");
    }
}

std::vector<cplx> density_fourier(const ModeExpansion& state, SpectrumMethod method) {
    const auto& c = state.coeffs();
    const bool big = c.size() > fft_threshold;
    switch (method) {
        case SpectrumMethod::direct: return autocorrelation_direct(c);
        case SpectrumMethod::fft: return autocorrelation_fft(c);
        case SpectrumMethod::automatic: break;
    }
    return big ? autocorrelation_fft(c) : autocorrelation_direct(c);
}

} // namespace phasekit
