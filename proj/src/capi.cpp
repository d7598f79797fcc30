#include "naifs/naifs.h"

#include <cstring>
#include <new>
#include <string>

#include "acceptance.hpp"
#include "bundled.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "report.hpp"
#include "runner.hpp"
#include "version.hpp"

using naifs::ExperimentConfig;
using naifs::RunReport;

struct naifs_config {
    ExperimentConfig cfg;
};

struct naifs_report {
    RunReport report;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** err_out, const std::string& msg) {
    if (err_out) *err_out = dup_string(msg);
}

// Maps C++ exceptions onto status codes; never lets one escape the C surface.
template <typename Fn>
int guarded(char** err_out, Fn&& fn) {
    if (err_out) *err_out = nullptr;
    try {
        return fn();
    } catch (const naifs::ValidationError& e) {
        set_error(err_out, e.what());
        return NAIFS_ERR_VALIDATION;
    } catch (const std::exception& e) {
        set_error(err_out, e.what());
        return NAIFS_ERR_RUNTIME;
    } catch (...) {
        set_error(err_out, "unknown error");
        return NAIFS_ERR_RUNTIME;
    }
}

} // namespace

extern "C" {

const char* naifs_version(void) { return naifs::kToolVersion; }

int naifs_config_load(const char* path, naifs_config** out, char** err_out) {
    if (!path || !out) {
        set_error(err_out, "null argument");
        return NAIFS_ERR_VALIDATION;
    }
    return guarded(err_out, [&]() {
        auto* handle = new naifs_config{naifs::parse_config_file(path)};
        *out = handle;
        return NAIFS_OK;
    });
}

int naifs_config_parse(const char* text, const char* name, naifs_config** out, char** err_out) {
    if (!text || !out) {
        set_error(err_out, "null argument");
        return NAIFS_ERR_VALIDATION;
    }
    return guarded(err_out, [&]() {
        auto* handle =
            new naifs_config{naifs::parse_config_text(text, name ? name : "inline")};
        *out = handle;
        return NAIFS_OK;
    });
}

char* naifs_config_hash(const naifs_config* cfg) {
    if (!cfg) return nullptr;
    return dup_string(cfg->cfg.hash());
}

void naifs_config_free(naifs_config* cfg) { delete cfg; }

char* naifs_bundled_names(void) {
    std::string names;
    for (const auto& c : naifs::bundled_configs()) {
        names += c.name;
        names += '\n';
    }
    return dup_string(names);
}

char* naifs_bundled_text(const char* name) {
    if (!name) return nullptr;
    try {
        return dup_string(naifs::bundled_config(name));
    } catch (...) {
        return nullptr;
    }
}

int naifs_run(const naifs_config* cfg, const char* output_dir, const char* cache_dir,
              naifs_report** out, char** err_out) {
    if (!cfg || !out) {
        set_error(err_out, "null argument");
        return NAIFS_ERR_VALIDATION;
    }
    return guarded(err_out, [&]() {
        naifs::RunOptions opt;
        if (output_dir) opt.output_dir = output_dir;
        if (cache_dir) opt.cache_dir = cache_dir;
        auto* handle = new naifs_report{naifs::run_experiment(cfg->cfg, opt)};
        *out = handle;
        return NAIFS_OK;
    });
}

int naifs_sweep(const char* config_text, const char* name, const char* output_dir,
                const char* cache_dir, char** summary_out, char** err_out) {
    if (!config_text) {
        set_error(err_out, "null argument");
        return NAIFS_ERR_VALIDATION;
    }
    return guarded(err_out, [&]() {
        naifs::RunOptions opt;
        if (output_dir) opt.output_dir = output_dir;
        if (cache_dir) opt.cache_dir = cache_dir;
        auto reports = naifs::run_sweep(config_text, name ? name : "sweep", opt);
        std::string summary = std::to_string(reports.size()) + " sweep cells\n";
        for (const RunReport& r : reports) {
            summary += r.body["config"]["name"].get<std::string>();
            summary += " digest=" + r.digest() + "\n";
        }
        if (summary_out) *summary_out = dup_string(summary);
        return NAIFS_OK;
    });
}

int naifs_check(char** summary_out) {
    try {
        const auto results = naifs::run_acceptance();
        std::string text;
        bool ok = true;
        for (const auto& r : results) {
            text += (r.pass ? "[PASS] " : "[FAIL] ");
            text += "criterion " + std::to_string(r.id) + ": " + r.name;
            if (!r.details.empty()) text += " -- " + r.details;
            text += "\n";
            ok &= r.pass;
        }
        if (summary_out) *summary_out = dup_string(text);
        return ok ? NAIFS_OK : NAIFS_ERR_CHECK;
    } catch (const std::exception& e) {
        if (summary_out) *summary_out = dup_string(std::string("check suite error: ") + e.what());
        return NAIFS_ERR_RUNTIME;
    }
}

int naifs_report_load(const char* report_json_path, naifs_report** out, char** err_out) {
    if (!report_json_path || !out) {
        set_error(err_out, "null argument");
        return NAIFS_ERR_VALIDATION;
    }
    return guarded(err_out, [&]() {
        auto* handle = new naifs_report{naifs::load_report(report_json_path)};
        *out = handle;
        return NAIFS_OK;
    });
}

char* naifs_report_json(const naifs_report* report) {
    if (!report) return nullptr;
    return dup_string(report->report.canonical_json());
}

char* naifs_report_summary(const naifs_report* report) {
    if (!report) return nullptr;
    return dup_string(report->report.summary_text());
}

char* naifs_report_digest(const naifs_report* report) {
    if (!report) return nullptr;
    return dup_string(report->report.digest());
}

void naifs_report_free(naifs_report* report) { delete report; }

void naifs_string_free(char* s) { delete[] s; }

} // extern "C"
