/* C interface to the naifs pressure toolkit.
 *
 * Opaque handles + status codes; every returned string/handle is owned by
 * the caller and released through the matching naifs_*_free function.
 * Status codes mirror the CLI exit codes.
 */
#ifndef NAIFS_NAIFS_H
#define NAIFS_NAIFS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct naifs_config naifs_config;
typedef struct naifs_report naifs_report;

enum naifs_status {
    NAIFS_OK = 0,
    NAIFS_ERR_VALIDATION = 1, /* malformed config / inputs */
    NAIFS_ERR_RUNTIME = 2,    /* module failure while running */
    NAIFS_ERR_CHECK = 3       /* acceptance or property check failed */
};

const char* naifs_version(void);

/* Configuration ------------------------------------------------------- */

/* Parses and validates a config file. On failure returns a status code and,
 * when err_out is non-NULL, a newline-separated list of every problem. */
int naifs_config_load(const char* path, naifs_config** out, char** err_out);
int naifs_config_parse(const char* text, const char* name, naifs_config** out, char** err_out);

/* Canonical-serialization digest of the config. */
char* naifs_config_hash(const naifs_config* cfg);
void naifs_config_free(naifs_config* cfg);

/* Names of the bundled example configs, newline separated. */
char* naifs_bundled_names(void);
char* naifs_bundled_text(const char* name);

/* Execution ------------------------------------------------------------ */

/* Runs the config's task. output_dir may be NULL (uses the config's own);
 * cache_dir may be NULL (default ./.pressure-cache, NAIFS_CACHE_DIR
 * overrides) or "none" to disable caching. */
int naifs_run(const naifs_config* cfg, const char* output_dir, const char* cache_dir,
              naifs_report** out, char** err_out);

/* Cartesian sweep over the [sweep] section of a config text. Writes one
 * subdirectory per cell; returns a textual summary. */
int naifs_sweep(const char* config_text, const char* name, const char* output_dir,
                const char* cache_dir, char** summary_out, char** err_out);

/* Runs the bundled acceptance suite; summary_out receives one line per
 * criterion. Returns NAIFS_OK or NAIFS_ERR_CHECK. */
int naifs_check(char** summary_out);

/* Reports --------------------------------------------------------------- */

int naifs_report_load(const char* report_json_path, naifs_report** out, char** err_out);
char* naifs_report_json(const naifs_report* report);    /* canonical bytes */
char* naifs_report_summary(const naifs_report* report); /* human readable */
char* naifs_report_digest(const naifs_report* report);
void naifs_report_free(naifs_report* report);

void naifs_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* NAIFS_NAIFS_H */
