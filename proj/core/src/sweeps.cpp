#include <cmath>
#include <limits>

#include "epgw/spectral.hpp"

namespace epgw::spectral {

std::vector<double> make_grid(double lo, double hi, std::size_t points, GridSpacing spacing) {
    if (points < 2) throw InvalidRange("a grid needs at least 2 points");
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidRange("grid bounds must be finite with min < max");
    }
    if (spacing == GridSpacing::Log && !(lo > 0.0)) {
        throw InvalidRange("log grid needs a positive lower bound");
    }

    std::vector<double> grid(points);
    const double last = static_cast<double>(points - 1);
    if (spacing == GridSpacing::Linear) {
        for (std::size_t i = 0; i < points; ++i) grid[i] = lo + (hi - lo) * (static_cast<double>(i) / last);
    } else {
        const double a = std::log(lo);
        const double b = std::log(hi);
        for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(a + (b - a) * (static_cast<double>(i) / last));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<PhotonSweepRow> sweep_photon_number(const CoupledSystem& system, double n_min,
                                                double n_max, std::size_t points,
                                                GridSpacing spacing, EpConvention convention) {
    validate_system(system);
    if (!(n_min >= 0.0)) throw InvalidRange("photon number must be non-negative");
    const auto grid = make_grid(n_min, n_max, points, spacing);

    std::vector<PhotonSweepRow> rows;
    rows.reserve(grid.size());
    for (double n : grid) {
        PhotonSweepRow row{n, eigenvalues_general(system.with_photon_number(n), convention)};
        if (!rows.empty()) {
            const auto& prev = rows.back().pair;
            const double keep = std::abs(row.pair.lambda_plus - prev.lambda_plus) +
                                std::abs(row.pair.lambda_minus - prev.lambda_minus);
            const double swap = std::abs(row.pair.lambda_plus - prev.lambda_minus) +
                                std::abs(row.pair.lambda_minus - prev.lambda_plus);
            if (swap < keep) std::swap(row.pair.lambda_plus, row.pair.lambda_minus);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<StrainSweepRow> sweep_strain(const CoupledSystem& system, double n0, double h_min,
                                         double h_max, std::size_t points, GridSpacing spacing,
                                         EpConvention convention) {
    if (!(h_min >= 0.0)) throw InvalidRange("strain sweep needs h_min >= 0");
    const auto grid = make_grid(h_min, h_max, points, spacing);

    std::vector<StrainSweepRow> rows;
    rows.reserve(grid.size());
    for (double h : grid) {
        StrainSweepRow row{splitting(system, n0, h, convention), 0.0};
        const auto& r = row.result;
        if (r.d_approx > 0.0) {
            row.rel_err = std::abs(r.d_exact - r.d_approx) / r.d_approx;
        } else {
            row.rel_err = r.d_exact == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace epgw::spectral
