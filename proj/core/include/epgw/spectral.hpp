#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "epgw/system.hpp"

namespace epgw::spectral {

using Complex = std::complex<double>;

/// How the gain/loss contrast enters the supermode radical.
///
/// CoupledMode is the exact eigenstructure of the 2x2 equation-of-motion
/// matrix: alpha^2 = J^2 + 1/4 [(w1 - w2) + i (G2 - G1)/2]^2, so the balanced
/// device reaches its EP at G = 2J.
///
/// Simplified reproduces the balanced closed form w_m +- sqrt(J^2 - G^2): the
/// contrast term is doubled, the EP sits at G = J. It is realised as the same
/// matrix with each damping replaced by 2 G_j - mean(G).
enum class EpConvention { CoupledMode, Simplified };

enum class SupermodePhase { PTSymmetric, Broken, ExceptionalPoint };

enum class GridSpacing { Linear, Log };

std::string_view to_string(EpConvention convention) noexcept;
std::string_view to_string(SupermodePhase phase) noexcept;

/// Optomechanical contribution to one mode's damping.
struct DampingBreakdown {
    double phi = 0.0;          // detuning response, s
    double gamma_opt = 0.0;    // g0^2 n Phi, rad/s; negative means gain
    double gamma_total = 0.0;  // gamma_m + gamma_opt
};

/// Effective parameters of the two-mode equation of motion, rad/s.
struct ModeParameters {
    double omega_1 = 0.0;
    double omega_2 = 0.0;
    double gamma_1 = 0.0;  // total damping Gamma_1
    double gamma_2 = 0.0;
    double coupling = 0.0;
};

/// Row-major 2x2 complex matrix.
struct Matrix2c {
    Complex m11, m12, m21, m22;
};

struct SupermodePair {
    Complex lambda_plus;
    Complex lambda_minus;
    Complex discriminant;  // alpha^2
    SupermodePhase phase = SupermodePhase::PTSymmetric;

    /// alpha, the principal square root of the discriminant.
    Complex half_splitting() const { return std::sqrt(discriminant); }
};

struct SplittingResult {
    double strain = 0.0;
    double dg = 0.0;               // coupling perturbation, rad/s
    double d_exact = 0.0;          // Re(lambda+ - lambda-), rad/s
    double d_approx = 0.0;         // 4 sqrt(2) J sqrt(h), rad/s
    double linewidth_split = 0.0;  // |Im lambda+ - Im lambda-|, rad/s
    SupermodePair pair;
};

enum class EpSearchMethod { Automatic, ClosedForm, Bracketed };

struct EpLocation {
    double n0 = 0.0;
    double g0 = 0.0;       // vacuum coupling of cavity 1, rad/s
    double phi = 0.0;      // detuning response of cavity 1, s
    double gamma_1 = 0.0;  // total dampings at n0
    double gamma_2 = 0.0;
    Complex discriminant;  // residual alpha^2 at n0
    EpSearchMethod method = EpSearchMethod::ClosedForm;
};

/// Log-spaced scan used to seed the EP search on non-balanced devices.
struct EpSearchBracket {
    static constexpr double n_min = 1.0;
    static constexpr double n_max = 1e16;
    static constexpr std::size_t seeds = 512;
};

/// Relative half-splitting |alpha|/J below which a pair counts as coalesced.
inline constexpr double kEpRelativeTolerance = 1e-7;

/// Absolute discriminant tolerance (kEpRelativeTolerance * J)^2.
double ep_tolerance(double coupling) noexcept;

SupermodePhase classify(Complex discriminant, double coupling) noexcept;

// --- optomechanics -------------------------------------------------------

/// sqrt(hbar / (2 m w_m)), m.
double zero_point_fluctuation(const MechanicalResonator& resonator);

/// g0 = pi c x_zpf / L^2, rad/s.
double vacuum_coupling(const OpticalCavity& cavity, double x_zpf);

/// Phi = -k/((k/2)^2 + (D - w)^2) + k/((k/2)^2 + (D + w)^2), s. Negative for a
/// blue-detuned drive.
double detuning_response(const OpticalCavity& cavity, double omega_m);

/// gamma_opt = g0^2 n_cav Phi. Positive gamma_opt is extra damping (loss),
/// negative is anti-damping (gain); it enters the mode as -i Gamma/2.
DampingBreakdown optomech_damping(const OpticalCavity& cavity, const MechanicalResonator& resonator,
                                  double g0);

/// g0 of the cavity/resonator pair.
double vacuum_coupling(const OpticalCavity& cavity, const MechanicalResonator& resonator);

ModeParameters mode_parameters(const CoupledSystem& system);

/// Equation-of-motion matrix M with da/dt = -i M a. Under Simplified the
/// dampings are remapped as described on EpConvention.
Matrix2c system_matrix(const ModeParameters& modes,
                       EpConvention convention = EpConvention::CoupledMode) noexcept;

// --- eigenvalues ---------------------------------------------------------

/// Builds a labelled pair from centre (w1+w2)/2 - i(G1+G2)/4 and alpha^2.
/// lambda+ has the larger real part; ties go to the larger imaginary part.
SupermodePair pair_from_parts(Complex centre, Complex discriminant, double coupling);

/// Closed-form supermode eigenvalues.
SupermodePair eigenvalues_general(const ModeParameters& modes,
                                  EpConvention convention = EpConvention::CoupledMode);
SupermodePair eigenvalues_general(const CoupledSystem& system,
                                  EpConvention convention = EpConvention::CoupledMode);

/// Roots of the characteristic polynomial of `system_matrix`, labelled to
/// match eigenvalues_general by nearest distance.
SupermodePair eigenvalues_numeric(const ModeParameters& modes,
                                  EpConvention convention = EpConvention::CoupledMode);
SupermodePair eigenvalues_numeric(const CoupledSystem& system,
                                  EpConvention convention = EpConvention::CoupledMode);

/// Eigenvalues of an arbitrary 2x2 matrix via the shifted characteristic
/// polynomial; unlabelled.
std::pair<Complex, Complex> matrix_eigenvalues(const Matrix2c& m) noexcept;

// --- exceptional point ---------------------------------------------------

/// Photon number (applied to both cavities) at which the discriminant
/// vanishes. Balanced devices use the closed form n0 = c J / (g0^2 |Phi|) with
/// c = 2 (CoupledMode) or 1 (Simplified); others use a bracketed scan.
EpLocation ep_photon_number(const CoupledSystem& system,
                            EpConvention convention = EpConvention::CoupledMode,
                            EpSearchMethod method = EpSearchMethod::Automatic);

// --- strain response -----------------------------------------------------

/// dg = -2 g0 h.
double coupling_perturbation(double g0, double strain) noexcept;

/// Mode parameters of `system` at `n_cav` with both cavities strained by h
/// (g_j -> g_j + dg_j).
ModeParameters strained_modes(const CoupledSystem& system, double n_cav, double strain);

/// Supermode splitting of a device tuned to its EP at n0 and strained by h.
/// The strain-free discriminant is taken to be exactly zero and the strained
/// discriminant is built from its increment in factored form, so d_exact is
/// free of cancellation down to h ~ 1e-30. Throws NotAtEP when n0 misses the
/// EP by more than ep_tolerance.
SplittingResult splitting(const CoupledSystem& system, double n0, double strain,
                          EpConvention convention = EpConvention::CoupledMode);

// --- sweeps --------------------------------------------------------------

/// `points` values from lo to hi inclusive. Throws InvalidRange.
std::vector<double> make_grid(double lo, double hi, std::size_t points, GridSpacing spacing);

struct PhotonSweepRow {
    double n_cav = 0.0;
    SupermodePair pair;
};

/// Eigenvalues along a photon-number grid. Adjacent rows are paired by
/// nearest neighbour so branches do not swap labels.
std::vector<PhotonSweepRow> sweep_photon_number(const CoupledSystem& system, double n_min,
                                                double n_max, std::size_t points,
                                                GridSpacing spacing = GridSpacing::Linear,
                                                EpConvention convention = EpConvention::CoupledMode);

struct StrainSweepRow {
    SplittingResult result;
    double rel_err = 0.0;  // |d_exact - d_approx| / d_approx, 0 when both vanish
};

std::vector<StrainSweepRow> sweep_strain(const CoupledSystem& system, double n0, double h_min,
                                         double h_max, std::size_t points,
                                         GridSpacing spacing = GridSpacing::Log,
                                         EpConvention convention = EpConvention::CoupledMode);

}  // namespace epgw::spectral
