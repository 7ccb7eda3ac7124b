#include "epgw/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "epgw/config.hpp"
#include "epgw/dynamics.hpp"
#include "epgw/output.hpp"
#include "epgw/overlay.hpp"
#include "epgw/sensitivity.hpp"
#include "epgw/spectral.hpp"

namespace epgw::cli {

namespace {

using config::format_number;
using spectral::EpConvention;

struct CommonOptions {
    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    std::string convention = "eq7";
    std::vector<std::string> overrides;
};

struct NcavOptions {
    double min = 1e11;
    double max = 5e12;
    std::size_t points = 500;
    bool log = false;
};

struct StrainOptions {
    double min = 1e-26;
    double max = 1e-20;
    std::size_t points = 100;
    bool log = false;
};

struct SensitivityOptions {
    double fmin = 1e-7;
    double fmax = 1e3;
    std::size_t points = 200;
    std::optional<double> tmax;
    std::string tau_rule = "half-period";
    std::vector<std::string> overlays;
};

struct SimulateOptions {
    double strain = 1e-6;
    std::optional<double> duration;
    std::optional<double> dt;
    std::string frame = "rotating";
    std::string method = "exact";
    bool at_config_drive = false;
    std::size_t samples = 8192;
};

/// Upper bound on simulated samples; beyond this the CSV runs to gigabytes.
constexpr std::size_t kMaxSimulationSamples = 20'000'000;

void add_common(CLI::App& sub, CommonOptions& o) {
    sub.add_option("--config", o.config_path, "Config file (key = value lines)");
    sub.add_option("--output", o.output_path, "Data output file");
    sub.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--ep-convention", o.convention, "Gain/loss convention in the supermode radical")
        ->check(CLI::IsMember({"eq7", "eq8"}));
    sub.add_option("--set", o.overrides, "Override a config key: --set key=value")->take_all();
}

EpConvention parse_convention(const std::string& s) {
    return s == "eq8" ? EpConvention::Simplified : EpConvention::CoupledMode;
}

config::RunConfig resolve_config(const CommonOptions& o) {
    config::Overrides overrides;
    for (const auto& item : o.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError(0, "--set expects key=value, got '" + item + "'");
        overrides.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    if (o.config_path.empty()) return config::parse_config("", overrides);
    return config::load_config(o.config_path, overrides);
}

Table new_table(const std::string& command, const CommonOptions& o, const config::RunConfig& cfg) {
    Table t;
    t.command = command;
    t.settings.emplace_back("format", o.format);
    t.settings.emplace_back("ep_convention", o.convention);
    t.config = config::resolved_entries(cfg);
    return t;
}

void emit(const Table& table, const CommonOptions& o, std::ostream& out) {
    if (o.output_path.empty()) {
        out << "no --output given; " << table.rows.size() << " rows not written\n";
        return;
    }
    write_file(o.output_path, o.format == "json" ? render_json(table) : render_csv(table));
    out << "wrote " << table.rows.size() << " rows to " << o.output_path << "\n";
}

std::string integer(std::size_t n) { return std::to_string(n); }

// --- subcommands ---------------------------------------------------------

void cmd_ep_locate(const CommonOptions& o, std::ostream& out) {
    const auto cfg = resolve_config(o);
    const auto convention = parse_convention(o.convention);
    const auto loc = spectral::ep_photon_number(cfg.system, convention);

    out << "exceptional point (" << o.convention << " convention, "
        << (loc.method == spectral::EpSearchMethod::ClosedForm ? "closed form" : "bracketed search") << ")\n";
    out << "  n0        = " << format_number(loc.n0) << "\n";
    out << "  g0        = " << format_number(loc.g0) << " rad/s (" << format_number(to_hertz(loc.g0)) << " Hz)\n";
    out << "  Phi       = " << format_number(loc.phi) << " s\n";
    out << "  Gamma_1   = " << format_number(loc.gamma_1) << " rad/s\n";
    out << "  Gamma_2   = " << format_number(loc.gamma_2) << " rad/s\n";
    out << "  |alpha^2| = " << format_number(std::abs(loc.discriminant)) << " (rad/s)^2\n";

    if (o.output_path.empty()) return;
    Table t = new_table("ep-locate", o, cfg);
    t.columns = {"n0", "g0_rad_s", "phi_s", "gamma_1_rad_s", "gamma_2_rad_s", "residual_rad2_s2"};
    t.rows.push_back({loc.n0, loc.g0, loc.phi, loc.gamma_1, loc.gamma_2, std::abs(loc.discriminant)});
    emit(t, o, out);
}

void cmd_sweep_ncav(const CommonOptions& o, const NcavOptions& s, std::ostream& out) {
    const auto cfg = resolve_config(o);
    const auto convention = parse_convention(o.convention);
    const auto rows = spectral::sweep_photon_number(
        cfg.system, s.min, s.max, s.points, s.log ? spectral::GridSpacing::Log : spectral::GridSpacing::Linear,
        convention);

    Table t = new_table("sweep-ncav", o, cfg);
    t.settings.emplace_back("min", format_number(s.min));
    t.settings.emplace_back("max", format_number(s.max));
    t.settings.emplace_back("points", integer(s.points));
    t.settings.emplace_back("log", s.log ? "true" : "false");
    t.columns = {"n_cav", "re_plus_hz", "re_minus_hz", "im_plus_hz", "im_minus_hz", "phase"};
    std::size_t transitions = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = rows[i].pair;
        if (i > 0 && p.phase != rows[i - 1].pair.phase) ++transitions;
        t.rows.push_back({rows[i].n_cav, to_hertz(p.lambda_plus.real()), to_hertz(p.lambda_minus.real()),
                          to_hertz(p.lambda_plus.imag()), to_hertz(p.lambda_minus.imag()),
                          std::string(spectral::to_string(p.phase))});
    }
    out << "sweep-ncav: " << rows.size() << " points, " << transitions << " phase transition(s)\n";
    emit(t, o, out);
}

void cmd_sweep_strain(const CommonOptions& o, const StrainOptions& s, std::ostream& out) {
    const auto cfg = resolve_config(o);
    const auto convention = parse_convention(o.convention);
    const auto loc = spectral::ep_photon_number(cfg.system, convention);
    const auto rows = spectral::sweep_strain(
        cfg.system, loc.n0, s.min, s.max, s.points, s.log ? spectral::GridSpacing::Log : spectral::GridSpacing::Linear,
        convention);

    Table t = new_table("sweep-strain", o, cfg);
    t.settings.emplace_back("min", format_number(s.min));
    t.settings.emplace_back("max", format_number(s.max));
    t.settings.emplace_back("points", integer(s.points));
    t.settings.emplace_back("log", s.log ? "true" : "false");
    t.settings.emplace_back("n0", format_number(loc.n0));
    t.columns = {"h", "d_exact_rad_s", "d_approx_rad_s", "linewidth_split_rad_s", "rel_err"};
    double worst = 0.0;
    for (const auto& row : rows) {
        const auto& r = row.result;
        worst = std::max(worst, row.rel_err);
        t.rows.push_back({r.strain, r.d_exact, r.d_approx, r.linewidth_split, row.rel_err});
    }
    out << "sweep-strain: " << rows.size() << " points at n0 = " << format_number(loc.n0)
        << ", max |d_exact - d_approx| / d_approx = " << format_number(worst) << "\n";
    emit(t, o, out);
}

void cmd_sensitivity(const CommonOptions& o, const SensitivityOptions& s, std::ostream& out) {
    const auto cfg = resolve_config(o);
    const double t_max = s.tmax.value_or(cfg.t_max);
    const auto rule = s.tau_rule == "full-period" ? sensitivity::ObservationRule::FullPeriod
                                                  : sensitivity::ObservationRule::HalfPeriod;
    // Read overlays first so a bad file fails before any work is reported.
    std::vector<sensitivity::Overlay> overlays;
    for (const auto& path : s.overlays) overlays.push_back(sensitivity::load_overlay(path));

    const auto curve = sensitivity::sensitivity_curve(cfg.sensitivity, cfg.system.resonator_1,
                                                      cfg.system.coupling_j, s.fmin, s.fmax, s.points,
                                                      t_max, rule);

    Table t = new_table("sensitivity", o, cfg);
    t.settings.emplace_back("fmin", format_number(s.fmin));
    t.settings.emplace_back("fmax", format_number(s.fmax));
    t.settings.emplace_back("points", integer(s.points));
    t.settings.emplace_back("tmax", format_number(t_max));
    t.settings.emplace_back("tau_rule", std::string(sensitivity::to_string(rule)));
    for (std::size_t i = 0; i < s.overlays.size(); ++i) t.settings.emplace_back("overlay." + overlays[i].name, s.overlays[i]);
    t.columns = {"series", "frequency_hz", "observation_time_s", "h_min"};
    for (const auto& p : curve) t.rows.push_back({std::string("ep_detector"), p.gw_frequency, p.observation_time, p.h_min});
    for (const auto& overlay : overlays) {
        for (const auto& r : overlay.rows) {
            t.rows.push_back({overlay.name, Verbatim{r.frequency_text, r.frequency_hz}, std::monostate{},
                              Verbatim{r.strain_text, r.strain}});
        }
    }

    out << "sensitivity: " << curve.size() << " points, floor h_min = " << format_number(curve.front().h_min)
        << " at T = " << format_number(cfg.sensitivity.temperature) << " K, t_max = " << format_number(t_max)
        << " s\n";
    emit(t, o, out);
}

void cmd_simulate(const CommonOptions& o, const SimulateOptions& s, std::ostream& out) {
    const auto cfg = resolve_config(o);
    const auto convention = parse_convention(o.convention);

    spectral::ModeParameters modes;
    double n_cav = cfg.system.cavity_1.n_cav;
    double strain = 0.0;
    if (s.at_config_drive) {
        modes = spectral::mode_parameters(cfg.system);
    } else {
        n_cav = spectral::ep_photon_number(cfg.system, convention).n0;
        strain = s.strain;
        modes = spectral::strained_modes(cfg.system, n_cav, strain);
    }
    const auto matrix = spectral::system_matrix(modes, convention);
    const auto pair = spectral::eigenvalues_general(modes, convention);
    const double predicted_split = pair.lambda_plus.real() - pair.lambda_minus.real();
    const double frame = s.frame == "rotating" ? 0.5 * (modes.omega_1 + modes.omega_2) : 0.0;

    double duration = 0.0;
    if (s.duration) {
        duration = *s.duration;
    } else {
        if (!(predicted_split > 0.0)) {
            throw InvalidRange("supermodes are not split in frequency; pass --duration explicitly");
        }
        duration = 100.0 * kTwoPi / predicted_split;
    }
    double dt = 0.0;
    if (s.dt) {
        dt = *s.dt;
    } else {
        if (s.samples < 2) throw InvalidRange("--samples must be at least 2");
        dt = std::min(duration / static_cast<double>(s.samples - 1), 0.5 * dynamics::max_time_step(matrix, frame));
    }
    if (!(dt > 0.0) || !(duration >= dt)) throw InvalidRange("need 0 < dt <= duration");
    if (duration / dt > static_cast<double>(kMaxSimulationSamples)) {
        throw InvalidRange("simulation would need " + format_number(duration / dt) +
                           " samples; shorten --duration, raise --dt or use --frame rotating");
    }

    const dynamics::State initial{dynamics::Complex{1.0, 0.0}, dynamics::Complex{0.0, 0.0}};
    const auto trajectory = s.method == "rk" ? dynamics::propagate_rk(matrix, initial, duration, dt, frame)
                                             : dynamics::propagate_exact(matrix, initial, duration, dt, frame);

    Table t = new_table("simulate", o, cfg);
    t.settings.emplace_back("strain", format_number(strain));
    t.settings.emplace_back("photon_number", format_number(n_cav));
    t.settings.emplace_back("duration_s", format_number(duration));
    t.settings.emplace_back("dt_s", format_number(dt));
    t.settings.emplace_back("frame", s.frame);
    t.settings.emplace_back("frame_frequency_rad_s", format_number(frame));
    t.settings.emplace_back("method", s.method);
    t.columns = {"t_s", "re_a1", "im_a1", "re_a2", "im_a2"};
    t.rows.reserve(trajectory.size());
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        t.rows.push_back({trajectory.times[k], trajectory.a1[k].real(), trajectory.a1[k].imag(),
                          trajectory.a2[k].real(), trajectory.a2[k].imag()});
    }

    out << "simulate: " << trajectory.size() << " samples, dt = " << format_number(dt) << " s, "
        << s.frame << " frame\n";
    out << "  predicted Re(lambda+) - Re(lambda-) = " << format_number(predicted_split) << " rad/s\n";
    nlohmann::ordered_json spectrum;
    spectrum["predicted_split_rad_s"] = predicted_split;
    if (trajectory.size() >= dynamics::kMinSpectrumSamples) {
        const auto est = dynamics::estimate_spectrum(trajectory);
        out << "  spectral resolution = " << format_number(est.resolution) << " rad/s\n";
        for (std::size_t i = 0; i < est.peak_frequencies.size(); ++i) {
            out << "  peak " << i + 1 << ": " << format_number(est.peak_frequencies[i]) << " rad/s, linewidth "
                << format_number(est.peak_linewidths[i]) << " rad/s\n";
        }
        if (est.peak_frequencies.size() == 2) {
            out << "  estimated splitting = "
                << format_number(std::abs(est.peak_frequencies[0] - est.peak_frequencies[1])) << " rad/s\n";
        }
        spectrum["resolution_rad_s"] = est.resolution;
        spectrum["peak_frequencies_rad_s"] = est.peak_frequencies;
        spectrum["peak_linewidths_rad_s"] = est.peak_linewidths;
    } else {
        out << "  fewer than " << dynamics::kMinSpectrumSamples << " samples; spectrum not estimated\n";
    }
    t.extra["spectrum"] = spectrum;
    emit(t, o, out);
}

int report(std::ostream& err, const std::exception& e, int code) {
    err << "epgw: error: " << e.what() << "\n";
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exceptional-point optomechanical strain sensor simulator", "epgw"};
    app.require_subcommand(1);

    CommonOptions common;
    NcavOptions ncav;
    StrainOptions strain;
    SensitivityOptions sens;
    SimulateOptions sim;

    auto* ep = app.add_subcommand("ep-locate", "Photon number of the exceptional point");
    add_common(*ep, common);

    auto* sweep_ncav = app.add_subcommand("sweep-ncav", "Supermode eigenvalues versus photon number");
    add_common(*sweep_ncav, common);
    sweep_ncav->add_option("--min", ncav.min, "Lowest photon number");
    sweep_ncav->add_option("--max", ncav.max, "Highest photon number");
    sweep_ncav->add_option("--points", ncav.points, "Grid points");
    sweep_ncav->add_flag("--log", ncav.log, "Log-spaced grid");

    auto* sweep_strain = app.add_subcommand("sweep-strain", "Supermode splitting versus strain at the EP");
    add_common(*sweep_strain, common);
    sweep_strain->add_option("--min", strain.min, "Smallest strain");
    sweep_strain->add_option("--max", strain.max, "Largest strain");
    sweep_strain->add_option("--points", strain.points, "Grid points");
    sweep_strain->add_flag("--log", strain.log, "Log-spaced grid");

    auto* sensitivity = app.add_subcommand("sensitivity", "Minimum detectable strain versus GW frequency");
    add_common(*sensitivity, common);
    sensitivity->add_option("--fmin", sens.fmin, "Lowest GW frequency, Hz");
    sensitivity->add_option("--fmax", sens.fmax, "Highest GW frequency, Hz");
    sensitivity->add_option("--points", sens.points, "Grid points");
    sensitivity->add_option("--tmax", sens.tmax, "Longest observation time, s (default sensitivity.t_max_s)");
    sensitivity->add_option("--tau-rule", sens.tau_rule, "Observation time per GW period")
        ->check(CLI::IsMember({"half-period", "full-period"}));
    sensitivity->add_option("--overlay", sens.overlays, "Comparison curve CSV (frequency_hz,strain)");

    auto* simulate = app.add_subcommand("simulate", "Time-domain trajectory of the coupled modes");
    add_common(*simulate, common);
    simulate->add_option("--strain", sim.strain, "Strain applied to the device tuned to its EP");
    simulate->add_flag("--at-config-drive", sim.at_config_drive,
                       "Simulate at drive.photon_number without strain instead");
    simulate->add_option("--duration", sim.duration, "Simulated time, s (default 100 splitting periods)");
    simulate->add_option("--dt", sim.dt, "Time step, s");
    simulate->add_option("--samples", sim.samples, "Samples when --dt is not given");
    simulate->add_option("--frame", sim.frame, "Reference frame")->check(CLI::IsMember({"rotating", "lab"}));
    simulate->add_option("--method", sim.method, "Propagator")->check(CLI::IsMember({"exact", "rk"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return kSuccess;
        err << "epgw: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        if (ep->parsed()) cmd_ep_locate(common, out);
        else if (sweep_ncav->parsed()) cmd_sweep_ncav(common, ncav, out);
        else if (sweep_strain->parsed()) cmd_sweep_strain(common, strain, out);
        else if (sensitivity->parsed()) cmd_sensitivity(common, sens, out);
        else if (simulate->parsed()) cmd_simulate(common, sim, out);
        return kSuccess;
    } catch (const DomainError& e) {
        return report(err, e, kDomainError);
    } catch (const IoError& e) {
        return report(err, e, kIoError);
    } catch (const Error& e) {
        return report(err, e, kConfigError);
    } catch (const std::exception& e) {
        return report(err, e, kConfigError);
    }
}

}  // namespace epgw::cli
