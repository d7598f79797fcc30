#include "report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "errors.hpp"

namespace naifs {

namespace fs = std::filesystem;

void write_table(const std::string& path, const Table& table) {
    std::ofstream out(path);
    if (!out) throw RuntimeModuleError("cannot write table file '" + path + "'");
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    char buf[40];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            out << buf;
        }
        out << '\n';
    }
}

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RuntimeModuleError("cannot read table file '" + path + "'");
    Table t;
    t.name = fs::path(path).stem().string();
    std::string line;
    if (!std::getline(in, line)) throw RuntimeModuleError("table file '" + path + "' is empty");
    std::stringstream header(line);
    std::string col;
    while (std::getline(header, col, ',')) t.columns.push_back(col);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::vector<double> vals;
        std::string cell;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != t.columns.size())
            throw RuntimeModuleError("table file '" + path + "' has a ragged row");
        t.rows.push_back(std::move(vals));
    }
    return t;
}

std::string RunReport::digest() const { return hex64(fnv1a64(canonical_json())); }

namespace {

void render(const nlohmann::ordered_json& j, const std::string& indent, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() || (value.is_array() && !value.empty() && value[0].is_object())) {
                os << indent << key << ":\n";
                render(value, indent + "  ", os);
            } else {
                os << indent << key << " = " << value.dump() << '\n';
            }
        }
    } else if (j.is_array()) {
        for (const auto& item : j) {
            os << indent << "-\n";
            render(item, indent + "  ", os);
        }
    } else {
        os << indent << j.dump() << '\n';
    }
}

} // namespace

std::string RunReport::summary_text() const {
    std::ostringstream os;
    os << "== run summary ==\n";
    render(body, "", os);
    os << "\nwall_seconds = " << wall_seconds << "\n";
    os << "cache_hits = " << cache_hits << ", cache_misses = " << cache_misses << "\n";
    return os.str();
}

void write_report_files(const RunReport& report, const std::string& dir,
                        const std::vector<std::string>& formats) {
    fs::create_directories(dir);
    auto wants = [&](const char* f) {
        for (const std::string& s : formats)
            if (s == f) return true;
        return false;
    };
    if (wants("json")) {
        std::ofstream out(fs::path(dir) / "report.json");
        out << report.canonical_json();
        nlohmann::ordered_json meta;
        meta["wall_seconds"] = report.wall_seconds;
        meta["cache_hits"] = report.cache_hits;
        meta["cache_misses"] = report.cache_misses;
        meta["report_digest"] = report.digest();
        std::ofstream mout(fs::path(dir) / "meta.json");
        mout << meta.dump(2) << "\n";
    }
    if (wants("txt")) {
        std::ofstream out(fs::path(dir) / "summary.txt");
        out << report.summary_text();
    }
    if (wants("csv") && !report.tables.empty()) {
        fs::create_directories(fs::path(dir) / "tables");
        for (const Table& t : report.tables)
            write_table((fs::path(dir) / "tables" / (t.name + ".csv")).string(), t);
    }
}

RunReport load_report(const std::string& report_json_path) {
    std::ifstream in(report_json_path);
    if (!in) throw RuntimeModuleError("cannot open report '" + report_json_path + "'");
    RunReport r;
    try {
        r.body = nlohmann::ordered_json::parse(in);
    } catch (const std::exception& ex) {
        throw RuntimeModuleError("malformed report '" + report_json_path + "': " + ex.what());
    }
    return r;
}

} // namespace naifs
