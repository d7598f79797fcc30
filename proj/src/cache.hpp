#pragma once

#include <optional>
#include <string>

#include "json.hpp"

namespace naifs {

// Content-addressed result store: one JSON file per key, payload guarded by a
// digest so tampered or truncated entries are detected and recomputed.
// An unwritable directory disables the cache with a warning.
class ResultCache {
public:
    explicit ResultCache(std::string dir);

    // NAIFS_CACHE_DIR env override, else ./.pressure-cache
    static std::string default_dir();

    bool enabled() const { return enabled_; }
    const std::string& dir() const { return dir_; }
    const std::string& warning() const { return warning_; }

    std::optional<nlohmann::ordered_json> lookup(const std::string& key) const;
    void store(const std::string& key, const nlohmann::ordered_json& payload) const;

private:
    std::string dir_;
    bool enabled_ = false;
    std::string warning_;
};

} // namespace naifs
