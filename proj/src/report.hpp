#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace naifs {

// Delimited numeric table with a column-schema header line.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table(const std::string& path, const Table& table);
Table read_table(const std::string& path);

// Run result. `body` carries everything deterministic (tool version, config
// hash, task results, check outcomes); wall time and cache statistics stay
// outside so reports compare bit-identically across reruns and worker counts.
struct RunReport {
    nlohmann::ordered_json body;
    std::vector<Table> tables;
    double wall_seconds = 0.0;
    std::size_t cache_hits = 0;
    std::size_t cache_misses = 0;

    std::string canonical_json() const { return body.dump(2) + "\n"; }
    std::string digest() const;
    std::string summary_text() const;
};

// Writes report.json (canonical), meta.json (timing/cache), summary.txt and
// tables/<name>.csv according to the requested formats.
void write_report_files(const RunReport& report, const std::string& dir,
                        const std::vector<std::string>& formats);

RunReport load_report(const std::string& report_json_path);

} // namespace naifs
