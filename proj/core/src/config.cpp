#include "epgw/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace epgw::config {

namespace {

enum class Rule { Positive, NonNegative, Finite };

struct KeySpec {
    std::string_view field;  // suffix after the group
    Rule rule;
};

constexpr KeySpec kResonatorFields[] = {
    {"frequency_hz", Rule::Positive},  {"mass_kg", Rule::Positive},
    {"thickness_m", Rule::Positive},   {"quality_factor", Rule::Positive},
    {"gamma_m_hz", Rule::NonNegative},
};

constexpr KeySpec kSharedCavityFields[] = {
    {"length_m", Rule::Positive},
    {"decay_rate_hz", Rule::Positive},
};

constexpr KeySpec kSideCavityFields[] = {
    {"length_m", Rule::Positive},
    {"decay_rate_hz", Rule::Positive},
    {"detuning_hz", Rule::Finite},
    {"photon_number", Rule::NonNegative},
};

constexpr std::pair<std::string_view, Rule> kScalarKeys[] = {
    {"coupling.j_hz", Rule::Positive},      {"drive.photon_number", Rule::NonNegative},
    {"noise.temperature_k", Rule::Positive}, {"noise.sample_time_s", Rule::Positive},
    {"sensitivity.t_max_s", Rule::Positive},
};

const std::map<std::string, Rule, std::less<>>& key_rules() {
    static const auto rules = [] {
        std::map<std::string, Rule, std::less<>> out;
        for (std::string group : {"resonator", "resonator1", "resonator2"}) {
            for (const auto& f : kResonatorFields) out.emplace(group + "." + std::string(f.field), f.rule);
        }
        for (const auto& f : kSharedCavityFields) out.emplace("cavity." + std::string(f.field), f.rule);
        for (std::string group : {"cavity1", "cavity2"}) {
            for (const auto& f : kSideCavityFields) out.emplace(group + "." + std::string(f.field), f.rule);
        }
        for (const auto& [key, rule] : kScalarKeys) out.emplace(std::string(key), rule);
        return out;
    }();
    return rules;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> to_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
    return value;
}

using Values = std::map<std::string, double, std::less<>>;

void assign(Values& values, std::string_view key, std::string_view value_text, std::size_t line,
            bool allow_replace) {
    if (key.empty()) throw ParseError(line, "missing key before '='");
    if (!key_rules().contains(key)) throw UnknownKey(std::string(key));
    const auto value = to_number(value_text);
    if (!value) throw ParseError(line, "invalid number '" + std::string(trim(value_text)) + "' for " + std::string(key));
    auto [it, inserted] = values.emplace(std::string(key), *value);
    if (!inserted) {
        if (!allow_replace) throw ParseError(line, "duplicate key '" + std::string(key) + "'");
        it->second = *value;
    }
}

void check_rules(const Values& values) {
    std::vector<Violation> bad;
    for (const auto& [key, value] : values) {
        const Rule rule = key_rules().find(key)->second;
        const bool ok = std::isfinite(value) && (rule == Rule::Finite ||
                                                 (rule == Rule::Positive && value > 0.0) ||
                                                 (rule == Rule::NonNegative && value >= 0.0));
        if (!ok) bad.push_back({"", key, value});
    }
    if (!bad.empty()) throw NonPositiveParameter(std::move(bad));
}

struct Lookup {
    const Values& values;

    std::optional<double> get(std::string_view key) const {
        const auto it = values.find(key);
        return it == values.end() ? std::nullopt : std::optional<double>(it->second);
    }

    double side(std::string_view group, int index, std::string_view field, double fallback) const {
        const std::string sided = std::string(group) + std::to_string(index) + "." + std::string(field);
        if (auto v = get(sided)) return *v;
        if (auto v = get(std::string(group) + "." + std::string(field))) return *v;
        return fallback;
    }
};

RunConfig build(const Values& values) {
    const RunConfig defaults = default_config();
    const auto& dr = defaults.system.resonator_1;
    const auto& dc = defaults.system.cavity_1;
    const Lookup look{values};

    auto resonator = [&](int i) {
        return MechanicalResonator{
            .omega_m = to_angular(look.side("resonator", i, "frequency_hz", to_hertz(dr.omega_m))),
            .mass = look.side("resonator", i, "mass_kg", dr.mass),
            .gamma_m = to_angular(look.side("resonator", i, "gamma_m_hz", to_hertz(dr.gamma_m))),
            .quality_factor = look.side("resonator", i, "quality_factor", dr.quality_factor),
            .thickness = look.side("resonator", i, "thickness_m", dr.thickness),
        };
    };
    const MechanicalResonator r1 = resonator(1);
    const MechanicalResonator r2 = resonator(2);

    const double photons = look.get("drive.photon_number").value_or(dc.n_cav);
    auto cavity = [&](int i, const MechanicalResonator& r, double sign) {
        const std::string group = "cavity" + std::to_string(i);
        const auto detuning_hz = look.get(group + ".detuning_hz");
        const auto n = look.get(group + ".photon_number");
        return OpticalCavity{
            .length = look.side("cavity", i, "length_m", dc.length),
            .kappa = to_angular(look.side("cavity", i, "decay_rate_hz", to_hertz(dc.kappa))),
            .detuning = detuning_hz ? to_angular(*detuning_hz) : sign * r.omega_m,
            .n_cav = n.value_or(photons),
        };
    };

    RunConfig out;
    out.system = CoupledSystem{r1, r2, cavity(1, r1, +1.0), cavity(2, r2, -1.0),
                               to_angular(look.get("coupling.j_hz").value_or(to_hertz(defaults.system.coupling_j)))};
    out.sensitivity = SensitivityContext{
        .temperature = look.get("noise.temperature_k").value_or(defaults.sensitivity.temperature),
        .sample_time = look.get("noise.sample_time_s").value_or(defaults.sensitivity.sample_time),
        .drive_amplitude = drive_amplitude_from_thickness(r1.thickness),
        .quality_factor = r1.quality_factor,
    };
    out.t_max = look.get("sensitivity.t_max_s").value_or(defaults.t_max);

    validate_system(out.system);
    validate_context(out.sensitivity);
    return out;
}

bool shared_representable(const CoupledSystem& s) {
    return s.balanced();
}

}  // namespace

RunConfig default_config() {
    RunConfig out;
    out.system = reference_device();
    out.sensitivity = reference_context();
    out.t_max = 3600.0;
    return out;
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
    Values values;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        assign(values, trim(line.substr(0, eq)), line.substr(eq + 1), line_no, false);
    }
    for (const auto& [key, value] : overrides) assign(values, trim(key), value, 0, true);
    check_rules(values);
    return build(values);
}

RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read config file '" + path.string() + "'");
    return parse_config(buffer.str(), overrides);
}

std::vector<std::pair<std::string, double>> resolved_entries(const RunConfig& config) {
    const auto& s = config.system;
    std::vector<std::pair<std::string, double>> out;
    auto resonator = [&out](const std::string& group, const MechanicalResonator& r) {
        out.emplace_back(group + ".frequency_hz", to_hertz(r.omega_m));
        out.emplace_back(group + ".mass_kg", r.mass);
        out.emplace_back(group + ".thickness_m", r.thickness);
        out.emplace_back(group + ".quality_factor", r.quality_factor);
        out.emplace_back(group + ".gamma_m_hz", to_hertz(r.gamma_m));
    };
    if (shared_representable(s)) {
        resonator("resonator", s.resonator_1);
        out.emplace_back("cavity.length_m", s.cavity_1.length);
        out.emplace_back("cavity.decay_rate_hz", to_hertz(s.cavity_1.kappa));
        out.emplace_back("drive.photon_number", s.cavity_1.n_cav);
    } else {
        resonator("resonator1", s.resonator_1);
        resonator("resonator2", s.resonator_2);
        for (int i : {1, 2}) {
            const auto& c = i == 1 ? s.cavity_1 : s.cavity_2;
            const std::string group = "cavity" + std::to_string(i);
            out.emplace_back(group + ".length_m", c.length);
            out.emplace_back(group + ".decay_rate_hz", to_hertz(c.kappa));
            out.emplace_back(group + ".detuning_hz", to_hertz(c.detuning));
            out.emplace_back(group + ".photon_number", c.n_cav);
        }
    }
    out.emplace_back("coupling.j_hz", to_hertz(s.coupling_j));
    out.emplace_back("noise.temperature_k", config.sensitivity.temperature);
    out.emplace_back("noise.sample_time_s", config.sensitivity.sample_time);
    out.emplace_back("sensitivity.t_max_s", config.t_max);
    return out;
}

std::string serialize(const RunConfig& config) {
    std::string out;
    for (const auto& [key, value] : resolved_entries(config)) {
        out += key;
        out += " = ";
        out += format_number(value);
        out += '\n';
    }
    return out;
}

std::string serialize_system(const CoupledSystem& system) {
    RunConfig config = default_config();
    config.system = system;
    return serialize(config);
}

const std::vector<std::string>& known_keys() {
    static const auto keys = [] {
        std::vector<std::string> out;
        for (const auto& [key, rule] : key_rules()) out.push_back(key);
        return out;
    }();
    return keys;
}

std::string format_number(double value) {
    char buffer[64];
    const int n = std::snprintf(buffer, sizeof buffer, "%.16e", value);
    return std::string(buffer, static_cast<std::size_t>(n));
}

}  // namespace epgw::config
