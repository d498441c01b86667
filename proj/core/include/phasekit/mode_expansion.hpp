#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace phasekit {

using cplx = std::complex<double>;

// A state of the planar rotor written in the angular-momentum basis,
//
//   Psi(theta) = sum_l c_l e^{i l theta},   sum_l |c_l|^2 = 1,
//
// with contiguous mode index l running from l_min to l_max in unit steps.
// Modes are either all integers or all half-odd-integers; internally the index
// is stored doubled (twice_l) so half-integer lattices stay exact. The density
// |Psi|^2 has integer Fourier modes in both cases, so every windowed-statistics
// routine downstream accepts both lattices.
class ModeExpansion {
public:
    ModeExpansion() = default;

    // Integer-mode state. Validates finiteness of every coefficient.
    ModeExpansion(std::int64_t l_min, std::vector<cplx> coeffs);

    // General lattice: twice_l_min is 2*l_min, odd for half-integer modes.
    static ModeExpansion from_twice_index(std::int64_t twice_l_min, std::vector<cplx> coeffs);

    std::size_t size() const { return coeffs_.size(); }
    bool empty() const { return coeffs_.empty(); }

    bool half_integer() const { return (twice_l_min_ & 1) != 0; }
    std::int64_t twice_l_min() const { return twice_l_min_; }
    std::int64_t twice_l_max() const { return twice_l_min_ + 2 * (std::int64_t(coeffs_.size()) - 1); }

    // Mode value of slot k as a real number (exact for integers and half-integers).
    double mode_value(std::size_t k) const { return 0.5 * double(twice_l_min_ + 2 * std::int64_t(k)); }
    double l_min() const { return 0.5 * double(twice_l_min_); }
    double l_max() const { return 0.5 * double(twice_l_max()); }

    // Integer-lattice accessors; only meaningful when !half_integer().
    std::int64_t l_min_int() const { return twice_l_min_ / 2; }
    std::int64_t l_max_int() const { return twice_l_max() / 2; }

    const std::vector<cplx>& coeffs() const { return coeffs_; }
    const cplx& operator[](std::size_t k) const { return coeffs_[k]; }

    double norm_squared() const;
    double norm() const;

    // True when the constructor or a later renormalization guaranteed
    // |norm^2 - 1| <= 1e-12.
    bool normalized() const { return normalized_; }

    // Mass discarded when an infinite series was truncated to this expansion
    // (0 for exact finite states).
    double tail_bound() const { return tail_bound_; }

    // Scales coefficients to unit norm and sets the normalized flag.
    // Throws InvalidInput on the zero vector.
    void renormalize();

    // Drops exactly-zero coefficients at both ends of the range.
    // A window of at least one slot is kept even for the zero vector.
    ModeExpansion trimmed() const;

    void set_tail_bound(double t) { tail_bound_ = t; }
    void set_normalized(bool f) { normalized_ = f; }

    // Throws InvalidInput unless |norm^2 - 1| <= tol. `who` names the caller
    // in the message.
    void require_normalized(const char* who, double tol = 1e-9) const;

private:
    std::int64_t twice_l_min_ = 0;
    std::vector<cplx> coeffs_;
    bool normalized_ = false;
    double tail_bound_ = 0.0;

    void validate_finite() const;
};

// Fourier coefficients d_m of the density |Psi|^2 = sum_m d_m e^{i m theta},
// m = 0 .. M-1, where d_m = sum_l conj(c_l) c_{l+m} and d_{-m} = conj(d_m).
// d_0 equals the squared norm. Direct evaluation costs O(M^2); above
// `fft_threshold` modes an equivalent zero-padded FFT autocorrelation is used.
enum class SpectrumMethod { automatic, direct, fft };

std::vector<cplx> density_fourier(const ModeExpansion& state,
                                  SpectrumMethod method = SpectrumMethod::automatic);

inline constexpr std::size_t fft_threshold = 4096;

} // namespace phasekit
