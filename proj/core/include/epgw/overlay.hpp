#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace epgw::sensitivity {

/// One row of a user-supplied comparison curve. The original text is kept so
/// the row can be echoed into output files unchanged.
struct OverlayRow {
    std::string frequency_text;
    std::string strain_text;
    double frequency_hz = 0.0;
    double strain = 0.0;
};

struct Overlay {
    std::string name;
    std::vector<OverlayRow> rows;  // file order
};

/// Two-column CSV with header `frequency_hz,strain`; blank lines and `#`
/// comment lines are skipped, rows may come in any order. Throws ParseError.
Overlay parse_overlay(std::string_view text, std::string name);

/// Reads and parses `path`; the overlay is named after the file stem.
/// Throws IoError when the file cannot be read.
Overlay load_overlay(const std::filesystem::path& path);

}  // namespace epgw::sensitivity
