#pragma once

#include <vector>

#include "epgw/constants.hpp"
#include "epgw/errors.hpp"

namespace epgw {

/// A single mechanical mode. Frequencies and damping in rad/s.
struct MechanicalResonator {
    double omega_m = 0.0;         // angular frequency
    double mass = 0.0;            // effective mass, kg
    double gamma_m = 0.0;         // intrinsic damping rate
    double quality_factor = 0.0;  // dimensionless
    double thickness = 0.0;       // beam thickness, m

    bool operator==(const MechanicalResonator&) const = default;
};

/// A driven optical cavity. `detuning` is laser minus cavity frequency, signed.
struct OpticalCavity {
    double length = 0.0;     // m
    double kappa = 0.0;      // decay rate, rad/s
    double detuning = 0.0;   // rad/s
    double n_cav = 0.0;      // mean intracavity photon number

    /// Fundamental mode frequency pi*c/L, rad/s.
    double omega_cav() const noexcept { return kPi * PhysicalConstants::c / length; }

    bool operator==(const OpticalCavity&) const = default;
};

/// Two resonator/cavity pairs joined by a mechanical coupling J.
struct CoupledSystem {
    MechanicalResonator resonator_1;
    MechanicalResonator resonator_2;
    OpticalCavity cavity_1;
    OpticalCavity cavity_2;
    double coupling_j = 0.0;  // rad/s

    /// Identical pairs, cavity 1 blue-detuned by omega_m and cavity 2
    /// red-detuned by omega_m.
    bool balanced() const noexcept;

    /// Same device with both cavities driven at `n_cav` photons.
    CoupledSystem with_photon_number(double n_cav) const noexcept;

    bool operator==(const CoupledSystem&) const = default;
};

/// Thermal readout parameters for the frequency-noise model.
struct SensitivityContext {
    double temperature = 0.0;      // effective mode temperature, K
    double sample_time = 0.0;      // integration time tau, s
    double drive_amplitude = 0.0;  // root-mean-square drive amplitude x_c, m
    double quality_factor = 0.0;

    bool operator==(const SensitivityContext&) const = default;
};

/// Every broken invariant of `system`, in field order. Empty when valid.
std::vector<Violation> find_violations(const CoupledSystem& system);
std::vector<Violation> find_violations(const SensitivityContext& context);

/// Returns `system` unchanged, or throws NonPositiveParameter listing every
/// violation.
const CoupledSystem& validate_system(const CoupledSystem& system);
const SensitivityContext& validate_context(const SensitivityContext& context);

/// Drive amplitude of a doubly clamped beam of thickness t, x_c ~ 0.53 t.
double drive_amplitude_from_thickness(double thickness);

/// Si-beam device: 1 GHz modes, 5.3e-15 kg, 80 nm, J/2pi = 10 MHz,
/// L = 0.1 mm, kappa/2pi = 0.1 GHz, Q = 1e5, gamma_m = 0.
CoupledSystem reference_device(double n_cav = 1.48e12);

/// Room-temperature context for `reference_device()`, tau = 1 s.
SensitivityContext reference_context(double temperature = 300.0);

}  // namespace epgw
