#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epgw/system.hpp"

namespace epgw::config {

/// Everything a run needs, in internal (angular) units.
struct RunConfig {
    CoupledSystem system;
    SensitivityContext sensitivity;
    double t_max = 3600.0;  // longest observation time, s

    bool operator==(const RunConfig&) const = default;
};

/// `key`, `value` pairs applied after the file, e.g. from `--set`.
using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Flat dotted-key text, one `key = value` per line, `#` starts a comment.
///
/// Shared keys (`resonator.*`, `cavity.*`, `drive.photon_number`) set both
/// sides; `resonator1.*`, `resonator2.*`, `cavity1.*`, `cavity2.*` override one
/// side. Missing keys take the Si-beam defaults. Frequencies are Hz.
/// Throws ParseError, UnknownKey, NonPositiveParameter.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// Reads `path` (IoError when unreadable) and parses it.
RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides = {});

RunConfig default_config();

/// Canonical `key = value` list in Hz units. Balanced devices use the shared
/// keys; anything else is written per side.
std::vector<std::pair<std::string, double>> resolved_entries(const RunConfig& config);

/// `resolved_entries` rendered as config text; parse_config inverts it.
std::string serialize(const RunConfig& config);

/// Config text for `system` alone, defaults for everything else.
std::string serialize_system(const CoupledSystem& system);

/// Every key the parser accepts.
const std::vector<std::string>& known_keys();

/// Scientific notation with 17 significant digits.
std::string format_number(double value);

}  // namespace epgw::config
