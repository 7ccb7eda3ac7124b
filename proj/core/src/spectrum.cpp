#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

#include "epgw/dynamics.hpp"

namespace epgw::dynamics {

namespace {

struct FftwDeleter {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

// The FFTW planner (creation and destruction) is not re-entrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const noexcept {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using FftwPlan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

/// Y_k = sum_n w_n x_n e^{+2 pi i k n / N}. The + sign puts e^{-i w t} at
/// positive bins.
std::vector<double> windowed_magnitudes(const std::vector<Complex>& samples) {
    const std::size_t n = samples.size();
    FftwBuffer buffer(fftw_alloc_complex(n));
    // Plan before filling: FFTW_ESTIMATE never touches the data, and the
    // same size always yields the same plan.
    FftwPlan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_1d(static_cast<int>(n), buffer.get(), buffer.get(), FFTW_BACKWARD,
                                    FFTW_ESTIMATE));
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double w = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n)));
        buffer[k][0] = w * samples[k].real();
        buffer[k][1] = w * samples[k].imag();
    }
    fftw_execute(plan.get());
    std::vector<double> mags(n);
    for (std::size_t k = 0; k < n; ++k) mags[k] = std::hypot(buffer[k][0], buffer[k][1]);
    return mags;
}

}  // namespace

SpectralEstimate estimate_spectrum(const Trajectory& trajectory, const SpectrumOptions& options) {
    const std::size_t n = trajectory.size();
    if (n < kMinSpectrumSamples || trajectory.a1.size() != n) {
        throw TooFewSamples("spectrum estimation needs at least " + std::to_string(kMinSpectrumSamples) +
                            " samples, got " + std::to_string(n));
    }
    const double dt = trajectory.dt();
    for (std::size_t k = 1; k < n; ++k) {
        const double step = trajectory.times[k] - trajectory.times[k - 1];
        if (!(std::abs(step - dt) <= 1e-9 * dt)) throw InvalidRange("trajectory is not uniformly sampled");
    }

    const auto mags = windowed_magnitudes(trajectory.a1);
    const auto at = [&](std::ptrdiff_t k) {
        const auto m = static_cast<std::ptrdiff_t>(n);
        return mags[static_cast<std::size_t>(((k % m) + m) % m)];
    };

    std::vector<std::size_t> maxima;
    for (std::size_t k = 0; k < n; ++k) {
        const auto kk = static_cast<std::ptrdiff_t>(k);
        if (mags[k] > at(kk - 1) && mags[k] >= at(kk + 1)) maxima.push_back(k);
    }
    std::stable_sort(maxima.begin(), maxima.end(),
                     [&](std::size_t a, std::size_t b) { return mags[a] > mags[b]; });

    SpectralEstimate out;
    const double bin_width = kTwoPi / (static_cast<double>(n) * dt);
    out.resolution = bin_width;
    if (maxima.empty()) return out;

    const double floor = std::numeric_limits<double>::min();
    const double strongest = mags[maxima.front()];
    for (std::size_t k : maxima) {
        if (out.peak_frequencies.size() >= options.max_peaks) break;
        if (mags[k] < options.min_relative_magnitude * strongest) break;

        const auto kk = static_cast<std::ptrdiff_t>(k);
        const double left = std::log(std::max(at(kk - 1), floor));
        const double centre = std::log(std::max(mags[k], floor));
        const double right = std::log(std::max(at(kk + 1), floor));
        const double curvature = left - 2.0 * centre + right;
        const double offset = curvature < 0.0 ? 0.5 * (left - right) / curvature : 0.0;

        double bin = static_cast<double>(k) + offset;
        if (bin > 0.5 * static_cast<double>(n)) bin -= static_cast<double>(n);
        const double frequency = bin * bin_width + trajectory.frame_frequency;

        const bool resolved = std::all_of(out.peak_frequencies.begin(), out.peak_frequencies.end(),
                                          [&](double f) { return std::abs(f - frequency) >= bin_width; });
        if (!resolved) continue;

        // ln|Y| ~ c - (x - x0)^2 / (2 sigma^2): FWHM = 2 sigma sqrt(2 ln 2).
        const double fwhm_bins = curvature < 0.0 ? 2.0 * std::sqrt(-2.0 * std::log(2.0) / curvature) : 0.0;
        out.peak_frequencies.push_back(frequency);
        out.peak_linewidths.push_back(fwhm_bins * bin_width);
        out.peak_magnitudes.push_back(mags[k]);
    }
    return out;
}

}  // namespace epgw::dynamics
