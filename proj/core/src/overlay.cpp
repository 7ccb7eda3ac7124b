#include "epgw/overlay.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "epgw/errors.hpp"

namespace epgw::sensitivity {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

double number(std::string_view text, std::size_t line, const char* column) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ParseError(line, std::string("invalid ") + column + " value '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Overlay parse_overlay(std::string_view text, std::string name) {
    Overlay out{std::move(name), {}};
    bool header_seen = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        const std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.empty() || line.front() == '#') continue;

        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw ParseError(line_no, "expected exactly two comma-separated columns");
        }
        const auto first = trim(line.substr(0, comma));
        const auto second = trim(line.substr(comma + 1));
        if (!header_seen) {
            if (first != "frequency_hz" || second != "strain") {
                throw ParseError(line_no, "overlay header must be 'frequency_hz,strain'");
            }
            header_seen = true;
            continue;
        }
        out.rows.push_back({std::string(first), std::string(second), number(first, line_no, "frequency_hz"),
                            number(second, line_no, "strain")});
    }
    if (!header_seen) throw ParseError(line_no, "overlay header row 'frequency_hz,strain' is missing");
    return out;
}

Overlay load_overlay(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open overlay file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_overlay(buffer.str(), path.stem().string());
}

}  // namespace epgw::sensitivity
