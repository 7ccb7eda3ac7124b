#include "epgw/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "epgw/spectral.hpp"

namespace epgw::sensitivity {

namespace {

void check_resonator(const MechanicalResonator& r) {
    std::vector<Violation> bad;
    if (!(r.omega_m > 0.0)) bad.push_back({"resonator", "omega_m", r.omega_m});
    if (!(r.mass > 0.0)) bad.push_back({"resonator", "mass", r.mass});
    if (!bad.empty()) throw NonPositiveParameter(std::move(bad));
}

// m w_m <x_c^2> Q tau
double stiffness_budget(const SensitivityContext& ctx, const MechanicalResonator& r) {
    validate_context(ctx);
    check_resonator(r);
    return r.mass * r.omega_m * ctx.drive_amplitude * ctx.drive_amplitude * ctx.quality_factor *
           ctx.sample_time;
}

}  // namespace

std::string_view to_string(ObservationRule rule) noexcept {
    return rule == ObservationRule::HalfPeriod ? "half-period" : "full-period";
}

double thermal_frequency_noise(const SensitivityContext& context, const MechanicalResonator& resonator) {
    const double budget = stiffness_budget(context, resonator);
    return std::sqrt(PhysicalConstants::k_B * context.temperature / (kTwoPi * budget));
}

double min_detectable_strain(const SensitivityContext& context, const MechanicalResonator& resonator,
                             double coupling_j) {
    if (!(coupling_j > 0.0)) throw NonPositiveParameter("coupling_j", coupling_j);
    const double budget = stiffness_budget(context, resonator);
    return PhysicalConstants::k_B * context.temperature /
           (64.0 * kPi * budget * coupling_j * coupling_j);
}

double observation_time(double gw_frequency, double t_max, ObservationRule rule) {
    if (!(gw_frequency > 0.0)) throw NonPositiveParameter("gw_frequency", gw_frequency);
    if (!(t_max > 0.0)) throw NonPositiveParameter("t_max", t_max);
    const double window = rule == ObservationRule::HalfPeriod ? 0.5 / gw_frequency : 1.0 / gw_frequency;
    return std::min(t_max, window);
}

std::vector<SensitivityPoint> sensitivity_curve(const SensitivityContext& context,
                                                const MechanicalResonator& resonator,
                                                double coupling_j, double f_min, double f_max,
                                                std::size_t points, double t_max,
                                                ObservationRule rule) {
    if (!(f_min > 0.0)) throw InvalidRange("f_min must be positive");
    if (!(t_max > 0.0)) throw InvalidRange("t_max must be positive");
    const auto grid = spectral::make_grid(f_min, f_max, points, spectral::GridSpacing::Log);

    std::vector<SensitivityPoint> out;
    out.reserve(grid.size());
    SensitivityContext at_f = context;
    for (double f : grid) {
        at_f.sample_time = observation_time(f, t_max, rule);
        out.push_back({f, at_f.sample_time, min_detectable_strain(at_f, resonator, coupling_j)});
    }
    return out;
}

}  // namespace epgw::sensitivity
