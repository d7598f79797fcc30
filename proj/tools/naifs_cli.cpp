// Command-line front end. Talks to the core exclusively through the C API.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "naifs/naifs.h"

namespace {

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { naifs_string_free(ptr); }
    const char* get() const { return ptr ? ptr : ""; }
};

int report_error(int status, const OwnedString& err) {
    std::fprintf(stderr, "error: %s\n", err.get());
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological pressure estimators for time-varying iterated function systems"};
    app.set_version_flag("--version", std::string(naifs_version()));
    app.require_subcommand(1);

    std::string config_path, out_dir, cache_dir, report_path;

    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("config", config_path, "config file, or bundled:<name>")->required();
    run->add_option("-o,--out", out_dir, "output directory (default: the config's [output] dir)");
    run->add_option("--cache", cache_dir, "cache directory ('none' disables)");

    auto* check = app.add_subcommand("check", "run the bundled acceptance suite");

    auto* sweep = app.add_subcommand("sweep", "cartesian sweep over the [sweep] section");
    sweep->add_option("config", config_path, "config file with a [sweep] section")->required();
    sweep->add_option("-o,--out", out_dir, "output directory");
    sweep->add_option("--cache", cache_dir, "cache directory ('none' disables)");

    auto* show = app.add_subcommand("show", "print the summary of a stored report.json");
    show->add_option("report", report_path, "path to report.json")->required();

    auto* bundled = app.add_subcommand("bundled", "list bundled configs or print one");
    std::string bundled_name;
    bundled->add_option("name", bundled_name, "config name to print (omit to list)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        OwnedString err;
        naifs_config* cfg = nullptr;
        int rc;
        if (config_path.rfind("bundled:", 0) == 0) {
            OwnedString text;
            text.ptr = naifs_bundled_text(config_path.substr(8).c_str());
            if (!text.ptr) {
                std::fprintf(stderr, "error: unknown bundled config '%s'\n",
                             config_path.substr(8).c_str());
                return NAIFS_ERR_VALIDATION;
            }
            rc = naifs_config_parse(text.get(), config_path.c_str(), &cfg, &err.ptr);
        } else {
            rc = naifs_config_load(config_path.c_str(), &cfg, &err.ptr);
        }
        if (rc != NAIFS_OK) return report_error(rc, err);

        naifs_report* report = nullptr;
        rc = naifs_run(cfg, out_dir.empty() ? nullptr : out_dir.c_str(),
                       cache_dir.empty() ? nullptr : cache_dir.c_str(), &report, &err.ptr);
        naifs_config_free(cfg);
        if (rc != NAIFS_OK) return report_error(rc, err);

        OwnedString summary;
        summary.ptr = naifs_report_summary(report);
        std::fputs(summary.get(), stdout);
        naifs_report_free(report);
        return NAIFS_OK;
    }

    if (check->parsed()) {
        OwnedString summary;
        const int rc = naifs_check(&summary.ptr);
        std::fputs(summary.get(), stdout);
        if (rc == NAIFS_OK)
            std::puts("acceptance suite: PASS");
        else
            std::puts("acceptance suite: FAIL");
        return rc;
    }

    if (sweep->parsed()) {
        std::ifstream in(config_path);
        if (!in) {
            std::fprintf(stderr, "error: cannot open '%s'\n", config_path.c_str());
            return NAIFS_ERR_VALIDATION;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        OwnedString err, summary;
        const int rc = naifs_sweep(ss.str().c_str(), config_path.c_str(),
                                   out_dir.empty() ? nullptr : out_dir.c_str(),
                                   cache_dir.empty() ? nullptr : cache_dir.c_str(), &summary.ptr,
                                   &err.ptr);
        if (rc != NAIFS_OK) return report_error(rc, err);
        std::fputs(summary.get(), stdout);
        return NAIFS_OK;
    }

    if (show->parsed()) {
        OwnedString err;
        naifs_report* report = nullptr;
        const int rc = naifs_report_load(report_path.c_str(), &report, &err.ptr);
        if (rc != NAIFS_OK) return report_error(rc, err);
        OwnedString summary;
        summary.ptr = naifs_report_summary(report);
        std::fputs(summary.get(), stdout);
        naifs_report_free(report);
        return NAIFS_OK;
    }

    if (bundled->parsed()) {
        if (bundled_name.empty()) {
            OwnedString names;
            names.ptr = naifs_bundled_names();
            std::fputs(names.get(), stdout);
        } else {
            OwnedString text;
            text.ptr = naifs_bundled_text(bundled_name.c_str());
            if (!text.ptr) {
                std::fprintf(stderr, "error: unknown bundled config '%s'\n", bundled_name.c_str());
                return NAIFS_ERR_VALIDATION;
            }
            std::fputs(text.get(), stdout);
        }
        return NAIFS_OK;
    }

    return NAIFS_OK;
}
