#include "cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "config.hpp"

namespace naifs {

namespace fs = std::filesystem;

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {
    if (dir_.empty()) return; // explicitly disabled
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
        warning_ = "cache disabled: cannot create '" + dir_ + "': " + ec.message();
        return;
    }
    // probe writability once
    const fs::path probe = fs::path(dir_) / ".probe";
    {
        std::ofstream out(probe);
        if (!out) {
            warning_ = "cache disabled: '" + dir_ + "' is not writable";
            return;
        }
    }
    fs::remove(probe, ec);
    enabled_ = true;
}

std::string ResultCache::default_dir() {
    if (const char* env = std::getenv("NAIFS_CACHE_DIR")) return env;
    return ".pressure-cache";
}

std::optional<nlohmann::ordered_json> ResultCache::lookup(const std::string& key) const {
    if (!enabled_) return std::nullopt;
    const fs::path path = fs::path(dir_) / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::ordered_json entry;
    try {
        entry = nlohmann::ordered_json::parse(in);
    } catch (...) {
        return std::nullopt; // corrupted entry: recompute
    }
    if (!entry.contains("digest") || !entry.contains("payload")) return std::nullopt;
    const std::string digest = entry["digest"].get<std::string>();
    if (digest != hex64(fnv1a64(entry["payload"].dump()))) return std::nullopt; // tampered
    return entry["payload"];
}

void ResultCache::store(const std::string& key, const nlohmann::ordered_json& payload) const {
    if (!enabled_) return;
    nlohmann::ordered_json entry;
    entry["digest"] = hex64(fnv1a64(payload.dump()));
    entry["payload"] = payload;
    const fs::path path = fs::path(dir_) / (key + ".json");
    const fs::path tmp = fs::path(dir_) / (key + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << entry.dump(2) << "\n";
    }
    std::error_code ec;
    fs::rename(tmp, path, ec); // atomic publish
}

} // namespace naifs
