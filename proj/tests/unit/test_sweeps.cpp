#include <gtest/gtest.h>

#include <cmath>

#include "epgw/spectral.hpp"
#include "oracles.hpp"

namespace epgw::spectral {
namespace {

TEST(MakeGrid, LinearEndpointsExact) {
    const auto g = make_grid(1.0, 2.0, 5, GridSpacing::Linear);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_EQ(g.front(), 1.0);
    EXPECT_EQ(g.back(), 2.0);
    EXPECT_DOUBLE_EQ(g[2], 1.5);
}

TEST(MakeGrid, LogSpacingIsGeometric) {
    const auto g = make_grid(1e-26, 1e-20, 7, GridSpacing::Log);
    EXPECT_EQ(g.front(), 1e-26);
    EXPECT_EQ(g.back(), 1e-20);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], 10.0, 1e-12);
}

TEST(MakeGrid, InvalidRanges) {
    EXPECT_THROW(make_grid(1.0, 2.0, 1, GridSpacing::Linear), InvalidRange);
    EXPECT_THROW(make_grid(2.0, 1.0, 10, GridSpacing::Linear), InvalidRange);
    EXPECT_THROW(make_grid(1.0, 1.0, 10, GridSpacing::Linear), InvalidRange);
    EXPECT_THROW(make_grid(0.0, 1.0, 10, GridSpacing::Log), InvalidRange);
    EXPECT_THROW(make_grid(1.0, std::nan(""), 10, GridSpacing::Linear), InvalidRange);
}

TEST(SweepPhotonNumber, ThroughTheEp) {
    const auto s = reference_device();
    const double n0 = ep_photon_number(s).n0;
    const auto rows = sweep_photon_number(s, 1e11, 5e12, 500, GridSpacing::Log);
    ASSERT_EQ(rows.size(), 500u);

    int transitions = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = rows[i].pair;
        EXPECT_LT(std::abs(p.lambda_plus + p.lambda_minus - Complex(2.0 * s.resonator_1.omega_m, 0.0)),
                  1e-12 * s.resonator_1.omega_m);
        if (rows[i].n_cav < n0) {
            EXPECT_EQ(p.phase, SupermodePhase::PTSymmetric);
            EXPECT_EQ(p.lambda_plus.imag(), 0.0);
            EXPECT_EQ(p.lambda_minus.imag(), 0.0);
        } else {
            EXPECT_EQ(p.phase, SupermodePhase::Broken);
            EXPECT_TRUE(testing::close_rel(p.lambda_plus.real(), s.resonator_1.omega_m, 1e-12));
            EXPECT_TRUE(testing::close_rel(p.lambda_minus.real(), s.resonator_1.omega_m, 1e-12));
        }
        if (i > 0 && p.phase != rows[i - 1].pair.phase) ++transitions;
    }
    EXPECT_EQ(transitions, 1);
}

TEST(SweepPhotonNumber, AllBelowEp) {
    const auto s = reference_device();
    const auto rows = sweep_photon_number(s, 1e10, 1e12, 50);
    for (const auto& r : rows) {
        EXPECT_EQ(r.pair.phase, SupermodePhase::PTSymmetric);
        EXPECT_EQ(r.pair.lambda_plus.imag(), r.pair.lambda_minus.imag());
    }
}

TEST(SweepPhotonNumber, MinimalGrid) {
    const auto rows = sweep_photon_number(reference_device(), 1e12 - 1.0, 1e12, 2);
    EXPECT_EQ(rows.size(), 2u);
}

TEST(SweepPhotonNumber, BranchesStayContinuous) {
    // A non-balanced device passes near the EP without coalescing: labels
    // must follow the branches rather than re-sort each row.
    auto s = reference_device();
    s.resonator_2.omega_m *= 1.0 + 1e-4;
    s.cavity_2.detuning = -s.resonator_2.omega_m;
    const auto rows = sweep_photon_number(s, 1e11, 5e12, 400, GridSpacing::Log);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& a = rows[i - 1].pair;
        const auto& b = rows[i].pair;
        const double stay = std::abs(a.lambda_plus - b.lambda_plus) + std::abs(a.lambda_minus - b.lambda_minus);
        const double swap = std::abs(a.lambda_plus - b.lambda_minus) + std::abs(a.lambda_minus - b.lambda_plus);
        EXPECT_LE(stay, swap) << i;
    }
}

TEST(SweepPhotonNumber, RejectsBadRange) {
    EXPECT_THROW(sweep_photon_number(reference_device(), -1.0, 1e12, 10), InvalidRange);
    EXPECT_THROW(sweep_photon_number(reference_device(), 1e12, 1e11, 10), InvalidRange);
    EXPECT_THROW(sweep_photon_number(reference_device(), 1e11, 1e12, 1), InvalidRange);
}

TEST(SweepStrain, RelativeErrorSmallAcrossFigureRange) {
    const auto s = reference_device();
    const double n0 = ep_photon_number(s).n0;
    const auto rows = sweep_strain(s, n0, 1e-26, 1e-20, 100, GridSpacing::Log);
    ASSERT_EQ(rows.size(), 100u);
    for (const auto& r : rows) {
        EXPECT_LT(r.rel_err, 1e-2);
        EXPECT_NEAR(r.result.d_approx, 4.0 * std::sqrt(2.0) * s.coupling_j * std::sqrt(r.result.strain),
                    1e-12 * r.result.d_approx);
    }
    // Log-log slope of d_approx is exactly one half.
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double slope = std::log(rows[i].result.d_approx / rows[i - 1].result.d_approx) /
                             std::log(rows[i].result.strain / rows[i - 1].result.strain);
        EXPECT_NEAR(slope, 0.5, 1e-3);
    }
}

TEST(SweepStrain, ZeroStrainRow) {
    const auto s = reference_device();
    const double n0 = ep_photon_number(s).n0;
    const auto rows = sweep_strain(s, n0, 0.0, 1e-20, 5, GridSpacing::Linear);
    EXPECT_EQ(rows.front().result.d_exact, 0.0);
    EXPECT_EQ(rows.front().result.d_approx, 0.0);
    EXPECT_EQ(rows.front().rel_err, 0.0);
}

TEST(SweepStrain, Errors) {
    const auto s = reference_device();
    const double n0 = ep_photon_number(s).n0;
    EXPECT_THROW(sweep_strain(s, n0, -1e-24, 1e-20, 5), InvalidRange);
    EXPECT_THROW(sweep_strain(s, n0, 1e-20, 1e-24, 5), InvalidRange);
    EXPECT_THROW(sweep_strain(s, n0 * 1.1, 1e-24, 1e-20, 5), NotAtEP);
}

}  // namespace
}  // namespace epgw::spectral
