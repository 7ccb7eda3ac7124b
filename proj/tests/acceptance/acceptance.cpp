// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "epgw/dynamics.hpp"
#include "epgw/sensitivity.hpp"
#include "epgw/spectral.hpp"
#include "oracles.hpp"

#ifdef EPGW_HAVE_CLI
#include "epgw/commands.hpp"
#endif

namespace {

using namespace epgw;
using spectral::EpConvention;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    const char* id;
    const char* title;
    double time_limit_s;  // <= 0: no limit
    std::function<Outcome()> check;
};

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

#ifdef EPGW_HAVE_CLI
std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "epgw_acceptance";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (stdout_text) *stdout_text = out.str();
    return code;
}
#endif

Outcome ep_photon_number_check() {
    const auto loc = spectral::ep_photon_number(reference_device(), EpConvention::CoupledMode);
    bool ok = std::abs(loc.n0 - 1.48e12) <= 0.10 * 1.48e12;
    std::string via = "library";
#ifdef EPGW_HAVE_CLI
    std::string text;
    const int code = run_cli({"ep-locate", "--ep-convention", "eq7"}, &text);
    const auto at = text.find("n0        = ");
    const double reported = at == std::string::npos ? NAN : std::stod(text.substr(at + 12));
    ok = ok && code == 0 && reported == loc.n0;
    via = fmt("ep-locate exit %d", code);
#endif
    return {ok, fmt("n0 = %.6e, target 1.48e12 +-10%% (%s)", loc.n0, via.c_str())};
}

Outcome strain_floor(double temperature, double target) {
    const double h = sensitivity::min_detectable_strain(reference_context(temperature), reference_device().resonator_1,
                                                        reference_device().coupling_j);
    const bool ok = std::abs(h - target) <= 0.05 * target;
    return {ok, fmt("h_min(T=%g K) = %.4e, target %.2e +-5%%", temperature, h, target)};
}

Outcome sqrt_law() {
    const auto s = reference_device();
    const double n0 = spectral::ep_photon_number(s).n0;
    const auto rows = spectral::sweep_strain(s, n0, 1e-26, 1e-20, 100, spectral::GridSpacing::Log);
    // Least-squares slope of log d_exact against log h.
    double sx = 0, sy = 0, sxx = 0, sxy = 0, worst_rel = 0, worst_local = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i].result;
        const double x = std::log(r.strain), y = std::log(r.d_exact);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        const double approx = 4.0 * std::sqrt(2.0) * s.coupling_j * std::sqrt(r.strain);
        worst_rel = std::max(worst_rel, std::abs(r.d_exact - approx) / r.d_approx);
        if (i > 0) {
            const auto& p = rows[i - 1].result;
            const double local = std::log(r.d_exact / p.d_exact) / std::log(r.strain / p.strain);
            worst_local = std::max(worst_local, std::abs(local - 0.5));
        }
    }
    const double n = static_cast<double>(rows.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool ok = std::abs(slope - 0.5) <= 1e-3 && worst_local <= 1e-3 && worst_rel < 1e-2;
    return {ok, fmt("slope = %.9f, max local |slope-0.5| = %.2e, max rel err = %.2e", slope, worst_local,
                    worst_rel)};
}

Outcome bifurcation() {
    const auto s = reference_device();
    const double n0 = spectral::ep_photon_number(s).n0;
    const double w = s.resonator_1.omega_m;
    const auto rows = spectral::sweep_photon_number(s, 1e11, 5e12, 500, spectral::GridSpacing::Log);
    bool below_real = true, above_degenerate = true;
    int transitions = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = rows[i].pair;
        if (rows[i].n_cav < n0) {
            below_real = below_real && p.lambda_plus.imag() == 0.0 && p.lambda_minus.imag() == 0.0;
        } else {
            above_degenerate = above_degenerate && std::abs(p.lambda_plus.real() - w) <= 1e-12 * w &&
                               std::abs(p.lambda_minus.real() - w) <= 1e-12 * w;
        }
        if (i > 0 && p.phase != rows[i - 1].pair.phase) ++transitions;
    }
    const bool ok = rows.size() == 500 && below_real && above_degenerate && transitions == 1;
    return {ok, fmt("(a) Im = 0 below EP: %s, (b) Re = w_m above EP: %s, (c) transitions = %d",
                    below_real ? "yes" : "no", above_degenerate ? "yes" : "no", transitions)};
}

Outcome oracle_equivalence() {
    testing::ModeSampler rng(20240601);
    double worst = 0.0, worst_trace = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto p = rng();
        const auto g = spectral::eigenvalues_general(p);
        const auto n = spectral::eigenvalues_numeric(p);
        worst = std::max({worst, testing::rel_diff(g.lambda_plus, n.lambda_plus),
                          testing::rel_diff(g.lambda_minus, n.lambda_minus)});
        const std::complex<double> trace{p.omega_1 + p.omega_2, -(p.gamma_1 + p.gamma_2) / 2.0};
        worst_trace = std::max(worst_trace, testing::rel_diff(g.lambda_plus + g.lambda_minus, trace));
    }
    const bool ok = worst <= 1e-10 && worst_trace <= 1e-12;
    return {ok, fmt("1000 systems: max eigenvalue rel diff %.2e (<= 1e-10), max trace rel diff %.2e (<= 1e-12)",
                    worst, worst_trace)};
}

Outcome dynamics_end_to_end() {
    // Gamma = J on the eq7 device: half the EP photon number, lab frame.
    const auto base = reference_device();
    const double n = 0.5 * spectral::ep_photon_number(base).n0;
    const auto s = base.with_photon_number(n);
    const auto modes = spectral::mode_parameters(s);
    const auto pair = spectral::eigenvalues_general(modes);
    const double split = pair.lambda_plus.real() - pair.lambda_minus.real();
    const auto m = spectral::system_matrix(modes);
    const double duration = 100.0 * kTwoPi / split;
    const double dt = dynamics::max_time_step(m);
    const auto tr = dynamics::propagate_exact(m, {1.0, 0.0}, duration, dt);
    const auto est = dynamics::estimate_spectrum(tr);
    if (est.peak_frequencies.size() != 2) {
        return {false, fmt("expected 2 peaks, found %zu", est.peak_frequencies.size())};
    }
    const double hi = std::max(est.peak_frequencies[0], est.peak_frequencies[1]);
    const double lo = std::min(est.peak_frequencies[0], est.peak_frequencies[1]);
    const double e_plus = std::abs(hi - pair.lambda_plus.real());
    const double e_minus = std::abs(lo - pair.lambda_minus.real());
    const double limit = est.resolution / 10.0;
    const bool ok = e_plus <= limit && e_minus <= limit && std::abs(modes.gamma_2 - s.coupling_j) < 1e-6 * s.coupling_j;
    return {ok, fmt("%zu samples, |dRe l+| = %.3e, |dRe l-| = %.3e rad/s, resolution/10 = %.3e", tr.size(), e_plus,
                    e_minus, limit)};
}

Outcome integrator_order() {
    // Both cavities red-detuned: both modes lossy, so the system is stable.
    auto s = reference_device();
    s.cavity_1.detuning = -s.resonator_1.omega_m;
    const auto m = spectral::system_matrix(spectral::mode_parameters(s));
    const double frame = s.resonator_1.omega_m;
    const double dt = dynamics::max_time_step(m, frame);
    const double duration = 2000.0 * dt;
    auto deviation = [&](double step) {
        const auto ex = dynamics::propagate_exact(m, {1.0, 0.0}, duration, step, frame);
        const auto rk = dynamics::propagate_rk(m, {1.0, 0.0}, duration, step, frame);
        double worst = 0.0;
        for (std::size_t k = 0; k < ex.size(); ++k) {
            worst = std::max({worst, std::abs(ex.a1[k] - rk.a1[k]), std::abs(ex.a2[k] - rk.a2[k])});
        }
        return worst;
    };
    const double coarse = deviation(dt);
    const double fine = deviation(dt / 2.0);
    const double ratio = coarse / fine;
    return {ratio >= 14.0, fmt("max deviation %.3e -> %.3e, ratio %.2f (>= 14)", coarse, fine, ratio)};
}

Outcome determinism() {
#ifdef EPGW_HAVE_CLI
    const auto dir = scratch_dir();
    const std::vector<std::vector<std::string>> commands = {
        {"ep-locate"}, {"sweep-ncav", "--log"}, {"sweep-strain", "--log"}, {"sensitivity"}, {"simulate"},
    };
    std::string detail;
    bool ok = true;
    for (const auto& base : commands) {
        for (const char* format : {"csv", "json"}) {
            std::string runs[2];
            for (int r = 0; r < 2; ++r) {
                const auto path = dir / fmt("%s_%d.%s", base[0].c_str(), r, format);
                auto args = base;
                args.insert(args.end(), {"--format", format, "--output", path.string()});
                const int code = run_cli(args);
                runs[r] = slurp(path);
                std::filesystem::remove(path);
                if (code != 0) ok = false;
            }
            const bool same = !runs[0].empty() && runs[0] == runs[1];
            ok = ok && same;
            if (!same) detail += base[0] + "/" + format + " differs; ";
        }
    }
    std::filesystem::remove_all(dir);
    return {ok, detail.empty() ? "5 subcommands x {csv, json}: byte-identical" : detail};
#else
    return {false, "CLI not built (EPGW_BUILD_TOOLS=OFF)"};
#endif
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"AC1", "EP photon number", 1.0, ep_photon_number_check},
        {"AC2", "room-temperature strain floor", 1e-3, [] { return strain_floor(300.0, 8.9e-25); }},
        {"AC3", "cryogenic strain floor", 1e-3, [] { return strain_floor(1.0, 3.0e-27); }},
        {"AC4", "square-root law", 1.0, sqrt_law},
        {"AC5", "bifurcation structure", 1.0, bifurcation},
        {"AC6", "oracle equivalence", 5.0, oracle_equivalence},
        {"AC7", "dynamics end-to-end", 30.0, dynamics_end_to_end},
        {"AC8", "integrator order", 10.0, integrator_order},
        {"AC9", "determinism", 0.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome outcome;
        const auto start = Clock::now();
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        const bool in_time = c.time_limit_s <= 0.0 || elapsed < c.time_limit_s;
        const bool pass = outcome.pass && in_time;
        if (!pass) ++failures;
        std::string timing = fmt("%.3f ms", elapsed * 1e3);
        if (c.time_limit_s > 0.0) timing += fmt(" (limit %g ms)", c.time_limit_s * 1e3);
        std::printf("[%s] %s %s: %s; %s\n", pass ? "PASS" : "FAIL", c.id, c.title, outcome.detail.c_str(),
                    timing.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
