#include "epgw/spectral.hpp"

#include <cmath>
#include <utility>

namespace epgw::spectral {

std::string_view to_string(EpConvention convention) noexcept {
    switch (convention) {
        case EpConvention::CoupledMode: return "eq7";
        case EpConvention::Simplified: return "eq8";
    }
    return "?";
}

std::string_view to_string(SupermodePhase phase) noexcept {
    switch (phase) {
        case SupermodePhase::PTSymmetric: return "pt_symmetric";
        case SupermodePhase::Broken: return "broken";
        case SupermodePhase::ExceptionalPoint: return "exceptional_point";
    }
    return "?";
}

double ep_tolerance(double coupling) noexcept {
    const double scale = kEpRelativeTolerance * coupling;
    return scale * scale;
}

SupermodePhase classify(Complex discriminant, double coupling) noexcept {
    if (std::abs(discriminant) <= ep_tolerance(coupling)) return SupermodePhase::ExceptionalPoint;
    // Re(alpha^2) > 0 <=> |Re alpha| > |Im alpha|: the pair splits in frequency.
    return discriminant.real() > 0.0 ? SupermodePhase::PTSymmetric : SupermodePhase::Broken;
}

double zero_point_fluctuation(const MechanicalResonator& resonator) {
    std::vector<Violation> bad;
    if (!(resonator.mass > 0.0)) bad.push_back({"", "mass", resonator.mass});
    if (!(resonator.omega_m > 0.0)) bad.push_back({"", "omega_m", resonator.omega_m});
    if (!bad.empty()) throw NonPositiveParameter(std::move(bad));
    return std::sqrt(PhysicalConstants::hbar / (2.0 * resonator.mass * resonator.omega_m));
}

double vacuum_coupling(const OpticalCavity& cavity, double x_zpf) {
    if (!(cavity.length > 0.0)) throw NonPositiveParameter("length", cavity.length);
    if (!(x_zpf >= 0.0)) throw NonPositiveParameter("x_zpf", x_zpf);
    return kPi * PhysicalConstants::c * x_zpf / (cavity.length * cavity.length);
}

double vacuum_coupling(const OpticalCavity& cavity, const MechanicalResonator& resonator) {
    return vacuum_coupling(cavity, zero_point_fluctuation(resonator));
}

double detuning_response(const OpticalCavity& cavity, double omega_m) {
    const double k = cavity.kappa;
    if (!(k > 0.0)) throw NonPositiveParameter("kappa", k);
    const double half = 0.5 * k;
    const double stokes = cavity.detuning - omega_m;
    const double anti_stokes = cavity.detuning + omega_m;
    return -k / (half * half + stokes * stokes) + k / (half * half + anti_stokes * anti_stokes);
}

DampingBreakdown optomech_damping(const OpticalCavity& cavity, const MechanicalResonator& resonator,
                                  double g0) {
    if (!(cavity.n_cav >= 0.0)) throw NonPositiveParameter("n_cav", cavity.n_cav);
    if (!(resonator.gamma_m >= 0.0)) throw NonPositiveParameter("gamma_m", resonator.gamma_m);
    DampingBreakdown out;
    out.phi = detuning_response(cavity, resonator.omega_m);
    out.gamma_opt = g0 * g0 * cavity.n_cav * out.phi;
    out.gamma_total = resonator.gamma_m + out.gamma_opt;
    return out;
}

ModeParameters mode_parameters(const CoupledSystem& system) {
    validate_system(system);
    const auto d1 = optomech_damping(system.cavity_1, system.resonator_1,
                                     vacuum_coupling(system.cavity_1, system.resonator_1));
    const auto d2 = optomech_damping(system.cavity_2, system.resonator_2,
                                     vacuum_coupling(system.cavity_2, system.resonator_2));
    return ModeParameters{
        .omega_1 = system.resonator_1.omega_m,
        .omega_2 = system.resonator_2.omega_m,
        .gamma_1 = d1.gamma_total,
        .gamma_2 = d2.gamma_total,
        .coupling = system.coupling_j,
    };
}

Matrix2c system_matrix(const ModeParameters& modes, EpConvention convention) noexcept {
    double g1 = modes.gamma_1;
    double g2 = modes.gamma_2;
    if (convention == EpConvention::Simplified) {
        const double mean = 0.5 * (g1 + g2);
        g1 = 2.0 * modes.gamma_1 - mean;
        g2 = 2.0 * modes.gamma_2 - mean;
    }
    return Matrix2c{
        .m11 = {modes.omega_1, -0.5 * g1},
        .m12 = {modes.coupling, 0.0},
        .m21 = {modes.coupling, 0.0},
        .m22 = {modes.omega_2, -0.5 * g2},
    };
}

SupermodePair pair_from_parts(Complex centre, Complex discriminant, double coupling) {
    const Complex alpha = std::sqrt(discriminant);
    SupermodePair pair{centre + alpha, centre - alpha, discriminant,
                       classify(discriminant, coupling)};
    const auto& p = pair.lambda_plus;
    const auto& m = pair.lambda_minus;
    if (p.real() < m.real() || (p.real() == m.real() && p.imag() < m.imag())) {
        std::swap(pair.lambda_plus, pair.lambda_minus);
    }
    return pair;
}

namespace {

double contrast_scale(EpConvention convention) noexcept {
    return convention == EpConvention::CoupledMode ? 1.0 : 2.0;
}

}  // namespace

SupermodePair eigenvalues_general(const ModeParameters& modes, EpConvention convention) {
    const double s = contrast_scale(convention);
    const Complex centre{0.5 * (modes.omega_1 + modes.omega_2),
                         -0.25 * (modes.gamma_1 + modes.gamma_2)};
    const Complex w{modes.omega_1 - modes.omega_2, 0.5 * s * (modes.gamma_2 - modes.gamma_1)};
    const Complex discriminant = modes.coupling * modes.coupling + 0.25 * (w * w);
    return pair_from_parts(centre, discriminant, modes.coupling);
}

SupermodePair eigenvalues_general(const CoupledSystem& system, EpConvention convention) {
    return eigenvalues_general(mode_parameters(system), convention);
}

std::pair<Complex, Complex> matrix_eigenvalues(const Matrix2c& m) noexcept {
    // Shift by m11: mu^2 - delta mu - m12 m21 = 0 with delta = m22 - m11. The
    // shift keeps the large common frequency out of the quadratic.
    const Complex delta = m.m22 - m.m11;
    const Complex product = m.m12 * m.m21;
    const Complex root = std::sqrt(delta * delta + 4.0 * product);
    const double align = (std::conj(delta) * root).real();
    const Complex q = 0.5 * (align >= 0.0 ? delta + root : delta - root);
    if (q == Complex{}) return {m.m11, m.m11};
    const Complex mu1 = q;
    const Complex mu2 = -product / q;
    return {m.m11 + mu1, m.m11 + mu2};
}

SupermodePair eigenvalues_numeric(const ModeParameters& modes, EpConvention convention) {
    const auto [r1, r2] = matrix_eigenvalues(system_matrix(modes, convention));
    const SupermodePair reference = eigenvalues_general(modes, convention);

    const double direct = std::abs(r1 - reference.lambda_plus) + std::abs(r2 - reference.lambda_minus);
    const double crossed = std::abs(r1 - reference.lambda_minus) + std::abs(r2 - reference.lambda_plus);
    const Complex plus = direct <= crossed ? r1 : r2;
    const Complex minus = direct <= crossed ? r2 : r1;
    const Complex half = 0.5 * (plus - minus);
    const Complex discriminant = half * half;
    return SupermodePair{plus, minus, discriminant, classify(discriminant, modes.coupling)};
}

SupermodePair eigenvalues_numeric(const CoupledSystem& system, EpConvention convention) {
    return eigenvalues_numeric(mode_parameters(system), convention);
}

double coupling_perturbation(double g0, double strain) noexcept { return -2.0 * g0 * strain; }

ModeParameters strained_modes(const CoupledSystem& system, double n_cav, double strain) {
    const CoupledSystem tuned = system.with_photon_number(n_cav);
    validate_system(tuned);
    auto damping = [strain](const OpticalCavity& c, const MechanicalResonator& r) {
        const double g0 = vacuum_coupling(c, r);
        return optomech_damping(c, r, g0 + coupling_perturbation(g0, strain)).gamma_total;
    };
    return ModeParameters{
        .omega_1 = tuned.resonator_1.omega_m,
        .omega_2 = tuned.resonator_2.omega_m,
        .gamma_1 = damping(tuned.cavity_1, tuned.resonator_1),
        .gamma_2 = damping(tuned.cavity_2, tuned.resonator_2),
        .coupling = tuned.coupling_j,
    };
}

SplittingResult splitting(const CoupledSystem& system, double n0, double strain,
                          EpConvention convention) {
    const CoupledSystem tuned = system.with_photon_number(n0);
    const ModeParameters modes = mode_parameters(tuned);
    const SupermodePair at_rest = eigenvalues_general(modes, convention);
    if (std::abs(at_rest.discriminant) > ep_tolerance(modes.coupling)) {
        throw NotAtEP("photon number " + std::to_string(n0) +
                      " is not at the exceptional point (|alpha^2| = " +
                      std::to_string(std::abs(at_rest.discriminant)) + ")");
    }

    const double g1 = vacuum_coupling(tuned.cavity_1, tuned.resonator_1);
    const double g2 = vacuum_coupling(tuned.cavity_2, tuned.resonator_2);
    const double opt1 = optomech_damping(tuned.cavity_1, tuned.resonator_1, g1).gamma_opt;
    const double opt2 = optomech_damping(tuned.cavity_2, tuned.resonator_2, g2).gamma_opt;

    // dg/g0 is the same for both cavities, so g^2 -> g^2 (1 + growth).
    const double eps = -2.0 * strain;
    const double growth = eps * (2.0 + eps);
    const double scale = (1.0 + eps) * (1.0 + eps);

    const double s = contrast_scale(convention);
    const double gamma_1 = tuned.resonator_1.gamma_m + opt1 * scale;
    const double gamma_2 = tuned.resonator_2.gamma_m + opt2 * scale;
    const Complex centre{0.5 * (modes.omega_1 + modes.omega_2), -0.25 * (gamma_1 + gamma_2)};

    // alpha^2(h) - alpha^2(0) = (w - w0)(w + w0)/4, with alpha^2(0) := 0.
    const Complex w0{modes.omega_1 - modes.omega_2, 0.5 * s * (modes.gamma_2 - modes.gamma_1)};
    const Complex dw{0.0, 0.5 * s * (opt2 - opt1) * growth};
    const Complex discriminant = 0.25 * dw * (2.0 * w0 + dw);

    SplittingResult out;
    out.strain = strain;
    out.dg = coupling_perturbation(g1, strain);
    out.pair = pair_from_parts(centre, discriminant, modes.coupling);
    const Complex alpha = std::sqrt(discriminant);
    out.d_exact = 2.0 * std::abs(alpha.real());
    out.linewidth_split = 2.0 * std::abs(alpha.imag());
    out.d_approx = strain > 0.0 ? 4.0 * std::sqrt(2.0) * modes.coupling * std::sqrt(strain) : 0.0;
    return out;
}

}  // namespace epgw::spectral
