#include <cmath>
#include <limits>

#include "epgw/spectral.hpp"

namespace epgw::spectral {

namespace {

EpLocation describe(const CoupledSystem& system, double n0, EpConvention convention,
                    EpSearchMethod method) {
    const CoupledSystem tuned = system.with_photon_number(n0);
    const ModeParameters modes = mode_parameters(tuned);
    EpLocation out;
    out.n0 = n0;
    out.g0 = vacuum_coupling(tuned.cavity_1, tuned.resonator_1);
    out.phi = detuning_response(tuned.cavity_1, tuned.resonator_1.omega_m);
    out.gamma_1 = modes.gamma_1;
    out.gamma_2 = modes.gamma_2;
    out.discriminant = eigenvalues_general(modes, convention).discriminant;
    out.method = method;
    return out;
}

EpLocation closed_form(const CoupledSystem& system, EpConvention convention) {
    const double g0 = vacuum_coupling(system.cavity_1, system.resonator_1);
    const double phi = detuning_response(system.cavity_1, system.resonator_1.omega_m);
    const double per_photon = g0 * g0 * std::abs(phi);
    if (!(per_photon > 0.0)) throw ZeroCoupling("g0^2 Phi vanishes; photon number cannot tune the gain");
    // Balanced: G2 - G1 = 2 n g0^2 |Phi|; EP at s |G2 - G1| / 2 = 2 J.
    const double s = convention == EpConvention::CoupledMode ? 1.0 : 2.0;
    const double n0 = 2.0 * system.coupling_j / (s * per_photon);
    return describe(system, n0, convention, EpSearchMethod::ClosedForm);
}

EpLocation bracketed(const CoupledSystem& system, EpConvention convention) {
    const double slope1 = [&] {
        const double g = vacuum_coupling(system.cavity_1, system.resonator_1);
        return g * g * detuning_response(system.cavity_1, system.resonator_1.omega_m);
    }();
    const double slope2 = [&] {
        const double g = vacuum_coupling(system.cavity_2, system.resonator_2);
        return g * g * detuning_response(system.cavity_2, system.resonator_2.omega_m);
    }();
    if (slope1 == slope2) {
        throw ZeroCoupling("gain/loss contrast does not depend on photon number");
    }

    auto residual = [&](double n) {
        return std::abs(eigenvalues_general(mode_parameters(system.with_photon_number(n)), convention)
                            .discriminant);
    };

    using Bracket = EpSearchBracket;
    const double log_lo = std::log(Bracket::n_min);
    const double step = (std::log(Bracket::n_max) - log_lo) / static_cast<double>(Bracket::seeds - 1);
    auto seed = [&](std::size_t k) {
        if (k == 0) return Bracket::n_min;
        if (k == Bracket::seeds - 1) return Bracket::n_max;
        return std::exp(log_lo + step * static_cast<double>(k));
    };

    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < Bracket::seeds; ++k) {
        const double value = residual(seed(k));
        if (value < best_value) {
            best_value = value;
            best = k;
        }
    }

    // Golden-section refinement between the neighbouring seeds. |alpha^2| is
    // V-shaped around a simple EP so the section converges to a few ulps.
    double a = seed(best == 0 ? 0 : best - 1);
    double b = seed(best + 1 >= Bracket::seeds ? Bracket::seeds - 1 : best + 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = residual(x1);
    double f2 = residual(x2);
    for (int iter = 0; iter < 400 && (b - a) > 4.0 * std::numeric_limits<double>::epsilon() * b;
         ++iter) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = residual(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = residual(x2);
        }
    }
    double n0 = f1 <= f2 ? x1 : x2;
    double f0 = std::min(f1, f2);
    for (double candidate : {a, b}) {
        if (const double f = residual(candidate); f < f0) {
            f0 = f;
            n0 = candidate;
        }
    }

    if (f0 > ep_tolerance(system.coupling_j)) {
        throw NoEP("no exceptional point for photon numbers in [1, 1e16] (min |alpha^2| = " +
                   std::to_string(f0) + " (rad/s)^2)");
    }
    return describe(system, n0, convention, EpSearchMethod::Bracketed);
}

}  // namespace

EpLocation ep_photon_number(const CoupledSystem& system, EpConvention convention,
                            EpSearchMethod method) {
    validate_system(system);
    if (method == EpSearchMethod::Automatic) {
        method = system.balanced() ? EpSearchMethod::ClosedForm : EpSearchMethod::Bracketed;
    }
    if (method == EpSearchMethod::ClosedForm) {
        if (!system.balanced()) throw InvalidRange("closed-form EP search requires a balanced device");
        return closed_form(system, convention);
    }
    return bracketed(system, convention);
}

}  // namespace epgw::spectral
