#include "epgw/system.hpp"

#include <cmath>
#include <sstream>

namespace epgw {

namespace {

std::string describe(const std::vector<Violation>& violations) {
    std::ostringstream out;
    out << "invalid parameter";
    if (violations.size() > 1) out << "s";
    out << ":";
    for (const auto& v : violations) out << " " << v.qualified_name() << "=" << v.value;
    return out.str();
}

void require_positive(std::vector<Violation>& out, const char* owner, const char* name,
                      double value) {
    if (!(value > 0.0) || !std::isfinite(value)) out.push_back({owner, name, value});
}

void require_non_negative(std::vector<Violation>& out, const char* owner, const char* name,
                          double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) out.push_back({owner, name, value});
}

void check(std::vector<Violation>& out, const char* owner, const MechanicalResonator& r) {
    require_positive(out, owner, "omega_m", r.omega_m);
    require_positive(out, owner, "mass", r.mass);
    require_non_negative(out, owner, "gamma_m", r.gamma_m);
    require_positive(out, owner, "quality_factor", r.quality_factor);
    require_positive(out, owner, "thickness", r.thickness);
}

void check(std::vector<Violation>& out, const char* owner, const OpticalCavity& c) {
    require_positive(out, owner, "length", c.length);
    require_positive(out, owner, "kappa", c.kappa);
    if (!std::isfinite(c.detuning)) out.push_back({owner, "detuning", c.detuning});
    require_non_negative(out, owner, "n_cav", c.n_cav);
}

}  // namespace

NonPositiveParameter::NonPositiveParameter(std::vector<Violation> violations)
    : Error(describe(violations)), violations_(std::move(violations)) {}

NonPositiveParameter::NonPositiveParameter(std::string parameter, double value)
    : NonPositiveParameter(std::vector<Violation>{{"", std::move(parameter), value}}) {}

bool CoupledSystem::balanced() const noexcept {
    OpticalCavity c2 = cavity_2;
    c2.detuning = cavity_1.detuning;
    return resonator_1 == resonator_2 && cavity_1 == c2 &&
           cavity_1.detuning == resonator_1.omega_m && cavity_2.detuning == -resonator_2.omega_m;
}

CoupledSystem CoupledSystem::with_photon_number(double n_cav) const noexcept {
    CoupledSystem out = *this;
    out.cavity_1.n_cav = n_cav;
    out.cavity_2.n_cav = n_cav;
    return out;
}

std::vector<Violation> find_violations(const CoupledSystem& system) {
    std::vector<Violation> out;
    check(out, "resonator_1", system.resonator_1);
    check(out, "resonator_2", system.resonator_2);
    check(out, "cavity_1", system.cavity_1);
    check(out, "cavity_2", system.cavity_2);
    require_positive(out, "", "coupling_j", system.coupling_j);
    return out;
}

std::vector<Violation> find_violations(const SensitivityContext& context) {
    std::vector<Violation> out;
    require_positive(out, "sensitivity", "temperature", context.temperature);
    require_positive(out, "sensitivity", "sample_time", context.sample_time);
    require_positive(out, "sensitivity", "drive_amplitude", context.drive_amplitude);
    require_positive(out, "sensitivity", "quality_factor", context.quality_factor);
    return out;
}

const CoupledSystem& validate_system(const CoupledSystem& system) {
    if (auto v = find_violations(system); !v.empty()) throw NonPositiveParameter(std::move(v));
    return system;
}

const SensitivityContext& validate_context(const SensitivityContext& context) {
    if (auto v = find_violations(context); !v.empty()) throw NonPositiveParameter(std::move(v));
    return context;
}

double drive_amplitude_from_thickness(double thickness) {
    if (!(thickness > 0.0)) throw NonPositiveParameter("thickness", thickness);
    return 0.53 * thickness;
}

CoupledSystem reference_device(double n_cav) {
    const MechanicalResonator resonator{
        .omega_m = to_angular(1e9),
        .mass = 5.3e-15,
        .gamma_m = 0.0,
        .quality_factor = 1e5,
        .thickness = 80e-9,
    };
    const OpticalCavity cavity{
        .length = 1e-4,
        .kappa = to_angular(1e8),
        .detuning = resonator.omega_m,
        .n_cav = n_cav,
    };
    OpticalCavity red = cavity;
    red.detuning = -resonator.omega_m;
    return CoupledSystem{resonator, resonator, cavity, red, to_angular(1e7)};
}

SensitivityContext reference_context(double temperature) {
    return SensitivityContext{
        .temperature = temperature,
        .sample_time = 1.0,
        .drive_amplitude = drive_amplitude_from_thickness(80e-9),
        .quality_factor = 1e5,
    };
}

}  // namespace epgw
