#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "epgw/spectral.hpp"

namespace epgw::dynamics {

using Complex = std::complex<double>;
using State = std::array<Complex, 2>;
using spectral::Matrix2c;

/// Uniformly sampled solution of da/dt = -i M a.
///
/// When `frame_frequency` is non-zero the stored amplitudes are in the frame
/// rotating at that frequency: a_stored(t) = a(t) exp(i w_f t).
struct Trajectory {
    std::vector<double> times;
    std::vector<Complex> a1;
    std::vector<Complex> a2;
    double frame_frequency = 0.0;

    std::size_t size() const noexcept { return times.size(); }
    double dt() const noexcept { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

struct SpectralEstimate {
    std::vector<double> peak_frequencies;  // rad/s, lab frame, strongest first
    std::vector<double> peak_linewidths;   // rad/s, FWHM of the log-parabola fit
    std::vector<double> peak_magnitudes;   // |DFT| at the peak bin
    double resolution = 0.0;               // 2 pi / (N dt)
};

/// Above this eigenvector condition number the exact propagator treats the
/// matrix as defective and uses the Jordan form. The modal sum loses about
/// condition * epsilon, so this keeps it near 1e-12 relative.
inline constexpr double kDefectiveConditionThreshold = 1e4;

/// Largest dt accepted for matrix `m` seen from `frame_frequency`:
/// 0.1 * 2 pi / max|Re lambda|, or +inf when both real parts vanish.
double max_time_step(const Matrix2c& m, double frame_frequency = 0.0);

/// Frobenius condition number of the unit-column eigenvector matrix; +inf
/// for a defective matrix.
double eigenvector_condition(const Matrix2c& m);

/// Closed-form evolution a(t) = exp(-i M t) a(0) evaluated at t_k = k dt,
/// k = 0 .. floor(duration / dt). Throws SamplingTooCoarse or InvalidRange.
Trajectory propagate_exact(const Matrix2c& m, const State& initial, double duration, double dt,
                           double frame_frequency = 0.0);

/// Fourth-order Runge-Kutta integration of the same equation on the same grid.
Trajectory propagate_rk(const Matrix2c& m, const State& initial, double duration, double dt,
                        double frame_frequency = 0.0);

Trajectory propagate_exact(const CoupledSystem& system, spectral::EpConvention convention,
                           const State& initial, double duration, double dt,
                           double frame_frequency = 0.0);
Trajectory propagate_rk(const CoupledSystem& system, spectral::EpConvention convention,
                        const State& initial, double duration, double dt,
                        double frame_frequency = 0.0);

struct SpectrumOptions {
    std::size_t max_peaks = 2;
    /// Secondary peaks weaker than this fraction of the strongest are
    /// ignored; sits above the -31 dB first sidelobe of the Hann window.
    double min_relative_magnitude = 0.05;
};

/// Hann-windowed DFT of a1(t) with three-bin log-parabolic refinement.
/// Needs at least 1024 uniform samples (TooFewSamples / InvalidRange).
SpectralEstimate estimate_spectrum(const Trajectory& trajectory, const SpectrumOptions& options = {});

inline constexpr std::size_t kMinSpectrumSamples = 1024;

}  // namespace epgw::dynamics
