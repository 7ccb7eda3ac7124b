#include "epgw/output.hpp"

#include <fstream>

#include "epgw/config.hpp"
#include "epgw/errors.hpp"

namespace epgw::cli {

namespace {

struct CsvCell {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return config::format_number(v); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const Verbatim& v) const { return v.text; }
};

struct JsonCell {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(const Verbatim& v) const { return v.value; }
};

}  // namespace

std::string render_csv(const Table& table) {
    std::string out;
    out += "# command = " + table.command + "\n";
    for (const auto& [key, value] : table.settings) out += "# " + key + " = " + value + "\n";
    for (const auto& [key, value] : table.config) out += "# " + key + " = " + config::format_number(value) + "\n";

    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += std::visit(CsvCell{}, row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& table) {
    nlohmann::ordered_json doc;
    doc["command"] = table.command;
    auto& settings = doc["settings"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.settings) settings[key] = value;
    auto& cfg = doc["config"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.config) cfg[key] = value;
    doc["columns"] = table.columns;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto& r = rows.emplace_back(nlohmann::ordered_json::array());
        for (const auto& cell : row) r.push_back(std::visit(JsonCell{}, cell));
    }
    if (!table.extra.is_null()) {
        for (const auto& [key, value] : table.extra.items()) doc[key] = value;
    }
    return doc.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file '" + path.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw IoError("failed writing output file '" + path.string() + "'");
}

}  // namespace epgw::cli
