#include "epgw/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace epgw::dynamics {

namespace {

Matrix2c shifted(const Matrix2c& m, double frame_frequency) {
    Matrix2c out = m;
    out.m11 -= frame_frequency;
    out.m22 -= frame_frequency;
    return out;
}

std::size_t sample_count(double duration, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidRange("time step must be positive");
    if (!(duration >= dt) || !std::isfinite(duration)) throw InvalidRange("duration must be at least one time step");
    return static_cast<std::size_t>(std::floor(duration / dt * (1.0 + 1e-12))) + 1;
}

void check_sampling(const Matrix2c& m, double dt, double frame_frequency) {
    const double limit = max_time_step(m, frame_frequency);
    if (dt > limit) {
        std::ostringstream msg;
        msg << "dt = " << dt << " s exceeds the sampling limit " << limit << " s";
        throw SamplingTooCoarse(msg.str());
    }
}

/// Unit eigenvector of m for eigenvalue lambda, from whichever row of
/// (m - lambda) gives the better-conditioned null vector.
std::array<Complex, 2> eigenvector(const Matrix2c& m, Complex lambda) {
    const std::array<Complex, 2> from_row1{m.m12, lambda - m.m11};
    const std::array<Complex, 2> from_row2{lambda - m.m22, m.m21};
    const double n1 = std::hypot(std::abs(from_row1[0]), std::abs(from_row1[1]));
    const double n2 = std::hypot(std::abs(from_row2[0]), std::abs(from_row2[1]));
    const auto& v = n1 >= n2 ? from_row1 : from_row2;
    const double norm = std::max(n1, n2);
    if (norm == 0.0) return {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    return {v[0] / norm, v[1] / norm};
}

struct Eigensystem {
    Complex mu, alpha;
    Complex lambda_plus, lambda_minus;
    std::array<Complex, 2> v_plus, v_minus;
    double condition = std::numeric_limits<double>::infinity();
};

Eigensystem decompose(const Matrix2c& m) {
    Eigensystem e;
    // lambda = mu +- alpha; alpha straight from the radical keeps its
    // relative accuracy when the pair nearly coalesces.
    e.mu = 0.5 * (m.m11 + m.m22);
    const Complex half_gap = 0.5 * (m.m11 - m.m22);
    e.alpha = std::sqrt(half_gap * half_gap + m.m12 * m.m21);
    e.lambda_plus = e.mu + e.alpha;
    e.lambda_minus = e.mu - e.alpha;
    e.v_plus = eigenvector(m, e.lambda_plus);
    e.v_minus = eigenvector(m, e.lambda_minus);
    const double det = std::abs(e.v_plus[0] * e.v_minus[1] - e.v_minus[0] * e.v_plus[1]);
    // ||V||_F ||V^-1||_F = ||V||_F^2 / |det V| for 2x2; unit columns give 2.
    e.condition = det > 0.0 ? 2.0 / det : std::numeric_limits<double>::infinity();
    return e;
}

Trajectory make_trajectory(std::size_t n, double dt, double frame_frequency) {
    Trajectory out;
    out.times.resize(n);
    out.a1.resize(n);
    out.a2.resize(n);
    out.frame_frequency = frame_frequency;
    for (std::size_t k = 0; k < n; ++k) out.times[k] = static_cast<double>(k) * dt;
    return out;
}

}  // namespace

double max_time_step(const Matrix2c& m, double frame_frequency) {
    const auto [l1, l2] = spectral::matrix_eigenvalues(shifted(m, frame_frequency));
    const double fastest = std::max(std::abs(l1.real()), std::abs(l2.real()));
    if (fastest == 0.0) return std::numeric_limits<double>::infinity();
    return 0.1 * kTwoPi / fastest;
}

double eigenvector_condition(const Matrix2c& m) { return decompose(m).condition; }

Trajectory propagate_exact(const Matrix2c& matrix, const State& initial, double duration, double dt,
                           double frame_frequency) {
    const std::size_t n = sample_count(duration, dt);
    const Matrix2c m = shifted(matrix, frame_frequency);
    check_sampling(matrix, dt, frame_frequency);

    Trajectory out = make_trajectory(n, dt, frame_frequency);
    const Complex i{0.0, 1.0};
    const Eigensystem e = decompose(m);

    if (e.condition <= kDefectiveConditionThreshold) {
        // a(0) = c+ v+ + c- v-
        const auto& vp = e.v_plus;
        const auto& vm = e.v_minus;
        const Complex det = vp[0] * vm[1] - vm[0] * vp[1];
        const Complex c_plus = (vm[1] * initial[0] - vm[0] * initial[1]) / det;
        const Complex c_minus = (-vp[1] * initial[0] + vp[0] * initial[1]) / det;
        // The common phase e^{-i mu t} is applied after the two modal terms
        // are combined, so its rounding is not amplified by the condition
        // number when the terms nearly cancel.
        for (std::size_t k = 0; k < n; ++k) {
            const double t = out.times[k];
            const Complex phase = std::exp(-i * e.mu * t);
            const Complex ep = c_plus * std::exp(-i * e.alpha * t);
            const Complex em = c_minus * std::exp(i * e.alpha * t);
            out.a1[k] = phase * (ep * vp[0] + em * vm[0]);
            out.a2[k] = phase * (ep * vp[1] + em * vm[1]);
        }
        return out;
    }

    // Defective (or nearly): exp(-iMt) = e^{-i mu t} [cos(alpha t) - i sin(alpha t)/alpha N],
    // N = M - mu. At alpha = 0 this is the Jordan form I - i t N.
    const Complex mu = 0.5 * (m.m11 + m.m22);
    const Complex half_gap = 0.5 * (m.m11 - m.m22);
    const Complex alpha = std::sqrt(half_gap * half_gap + m.m12 * m.m21);
    const Complex na1 = half_gap * initial[0] + m.m12 * initial[1];
    const Complex na2 = m.m21 * initial[0] - half_gap * initial[1];
    for (std::size_t k = 0; k < n; ++k) {
        const double t = out.times[k];
        const Complex x = alpha * t;
        Complex cosine;
        Complex sinc_t;  // sin(alpha t) / alpha
        if (std::abs(x) < 1e-4) {
            const Complex x2 = x * x;
            cosine = 1.0 - x2 / 2.0 + x2 * x2 / 24.0;
            sinc_t = t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
        } else {
            cosine = std::cos(x);
            sinc_t = std::sin(x) / alpha;
        }
        const Complex phase = std::exp(-i * mu * t);
        out.a1[k] = phase * (cosine * initial[0] - i * sinc_t * na1);
        out.a2[k] = phase * (cosine * initial[1] - i * sinc_t * na2);
    }
    return out;
}

Trajectory propagate_rk(const Matrix2c& matrix, const State& initial, double duration, double dt,
                        double frame_frequency) {
    const std::size_t n = sample_count(duration, dt);
    const Matrix2c m = shifted(matrix, frame_frequency);
    check_sampling(matrix, dt, frame_frequency);

    Trajectory out = make_trajectory(n, dt, frame_frequency);
    const Complex minus_i{0.0, -1.0};
    auto rhs = [&](const State& a) -> State {
        return {minus_i * (m.m11 * a[0] + m.m12 * a[1]), minus_i * (m.m21 * a[0] + m.m22 * a[1])};
    };
    auto axpy = [](const State& a, double h, const State& k) -> State {
        return {a[0] + h * k[0], a[1] + h * k[1]};
    };

    State a = initial;
    out.a1[0] = a[0];
    out.a2[0] = a[1];
    for (std::size_t k = 1; k < n; ++k) {
        const State k1 = rhs(a);
        const State k2 = rhs(axpy(a, 0.5 * dt, k1));
        const State k3 = rhs(axpy(a, 0.5 * dt, k2));
        const State k4 = rhs(axpy(a, dt, k3));
        for (std::size_t j = 0; j < 2; ++j) {
            a[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        out.a1[k] = a[0];
        out.a2[k] = a[1];
    }
    return out;
}

Trajectory propagate_exact(const CoupledSystem& system, spectral::EpConvention convention,
                           const State& initial, double duration, double dt, double frame_frequency) {
    return propagate_exact(spectral::system_matrix(spectral::mode_parameters(system), convention),
                           initial, duration, dt, frame_frequency);
}

Trajectory propagate_rk(const CoupledSystem& system, spectral::EpConvention convention,
                        const State& initial, double duration, double dt, double frame_frequency) {
    return propagate_rk(spectral::system_matrix(spectral::mode_parameters(system), convention),
                        initial, duration, dt, frame_frequency);
}

}  // namespace epgw::dynamics
