// C API surface tests: handles, status codes, error reporting.
#include <cassert>
#include <cstdio>
#include <cstring>
#include <string>

#include "naifs/naifs.h"

#define REQUIRE(cond)                                                       \
    do {                                                                    \
        if (!(cond)) {                                                      \
            std::fprintf(stderr, "FAILED %s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                       \
        }                                                                   \
    } while (0)

static const char* kConfig =
    "[system]\n"
    "space = symbolic\n"
    "alphabet = 2\n"
    "string_length = 20\n"
    "period = F\n"
    "family.F = shift\n"
    "map.shift.kind = shift\n"
    "[grids]\n"
    "n_range = 2..5\n"
    "eps_grid = 0.5 0.25\n"
    "[task]\n"
    "kind = sup-entropy\n"
    "[output]\n"
    "dir = /tmp/naifs-capi-out\n";

int main() {
    REQUIRE(naifs_version() != nullptr);
    REQUIRE(std::strlen(naifs_version()) >= 5);

    // parse + hash
    naifs_config* cfg = nullptr;
    char* err = nullptr;
    REQUIRE(naifs_config_parse(kConfig, "capi-test", &cfg, &err) == NAIFS_OK);
    REQUIRE(err == nullptr);
    char* hash = naifs_config_hash(cfg);
    REQUIRE(hash != nullptr);
    REQUIRE(std::strlen(hash) == 16);
    naifs_string_free(hash);

    // run
    naifs_report* report = nullptr;
    REQUIRE(naifs_run(cfg, "/tmp/naifs-capi-out", "none", &report, &err) == NAIFS_OK);
    char* json = naifs_report_json(report);
    REQUIRE(json != nullptr);
    REQUIRE(std::strstr(json, "sup_entropy") != nullptr);
    char* summary = naifs_report_summary(report);
    REQUIRE(summary != nullptr);
    char* digest = naifs_report_digest(report);
    REQUIRE(digest != nullptr && std::strlen(digest) == 16);
    naifs_string_free(json);
    naifs_string_free(summary);
    naifs_string_free(digest);
    naifs_report_free(report);
    naifs_config_free(cfg);

    // reload the stored report
    naifs_report* loaded = nullptr;
    REQUIRE(naifs_report_load("/tmp/naifs-capi-out/report.json", &loaded, &err) == NAIFS_OK);
    naifs_report_free(loaded);

    // validation error path carries every message
    naifs_config* bad = nullptr;
    const int rc = naifs_config_parse("[system]\nspace = nowhere\n", "bad", &bad, &err);
    REQUIRE(rc == NAIFS_ERR_VALIDATION);
    REQUIRE(bad == nullptr || true);
    REQUIRE(err != nullptr);
    REQUIRE(std::strstr(err, "unknown space") != nullptr);
    naifs_string_free(err);
    err = nullptr;

    // runtime error path: missing file
    naifs_config* missing = nullptr;
    REQUIRE(naifs_config_load("/nonexistent/naifs.cfg", &missing, &err) == NAIFS_ERR_VALIDATION);
    naifs_string_free(err);
    err = nullptr;

    // bundled listings
    char* names = naifs_bundled_names();
    REQUIRE(names != nullptr);
    REQUIRE(std::strstr(names, "twoshift-zero") != nullptr);
    naifs_string_free(names);
    char* text = naifs_bundled_text("circle-pair");
    REQUIRE(text != nullptr);
    naifs_string_free(text);
    REQUIRE(naifs_bundled_text("nope") == nullptr);

    std::puts("capi tests passed");
    return 0;
}
