#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "epgw/system.hpp"

namespace epgw::sensitivity {

struct SensitivityPoint {
    double gw_frequency = 0.0;      // Hz
    double observation_time = 0.0;  // s
    double h_min = 0.0;
};

/// Integration time granted to a wave of frequency f, capped at t_max.
enum class ObservationRule {
    HalfPeriod,  // tau = min(t_max, 1 / (2 f))
    FullPeriod,  // tau = min(t_max, 1 / f)
};

std::string_view to_string(ObservationRule rule) noexcept;

/// Thermomechanical frequency fluctuation
/// sqrt(k_B T / (2 pi tau m w_m <x_c^2> Q)), rad/s.
double thermal_frequency_noise(const SensitivityContext& context, const MechanicalResonator& resonator);

/// Strain whose EP splitting 4 sqrt(2) J sqrt(h) equals the thermal noise:
/// k_B T / (64 pi tau m w_m <x_c^2> Q J^2).
double min_detectable_strain(const SensitivityContext& context, const MechanicalResonator& resonator,
                             double coupling_j);

double observation_time(double gw_frequency, double t_max, ObservationRule rule);

/// h_min on a log grid of GW frequencies. The curve is flat at the t_max
/// floor below the knee and rises linearly in f above it.
std::vector<SensitivityPoint> sensitivity_curve(const SensitivityContext& context,
                                                const MechanicalResonator& resonator,
                                                double coupling_j, double f_min, double f_max,
                                                std::size_t points, double t_max,
                                                ObservationRule rule = ObservationRule::HalfPeriod);

}  // namespace epgw::sensitivity
