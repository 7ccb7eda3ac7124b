#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace epgw::cli {

/// Number that must be echoed exactly as the user wrote it.
struct Verbatim {
    std::string text;
    double value = 0.0;
};

using Cell = std::variant<std::monostate, double, std::string, Verbatim>;

/// One output document: settings for the comment header plus a table.
struct Table {
    std::string command;
    std::vector<std::pair<std::string, std::string>> settings;  // command options, rendered
    std::vector<std::pair<std::string, double>> config;         // resolved config entries
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json extra;  // JSON-only additions (e.g. spectrum estimates)
};

/// `# key = value` header, column row, then data rows. Doubles use 17
/// significant digits in scientific notation.
std::string render_csv(const Table& table);

std::string render_json(const Table& table);

/// Writes `contents` to `path` or throws IoError.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace epgw::cli
