/* dwl - dispersive wave lab: C API for the probe/solver toolkit.
 *
 * All entry points are thread-compatible (distinct sessions may be used from
 * distinct threads). Strings returned as `char*` are heap-allocated and must
 * be released with dwl_string_free(); `const char*` results are owned by the
 * session (or the library) and stay valid until the next call on the same
 * session (or dwl_session_close).
 */
#ifndef DWL_H
#define DWL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dwl_status {
    DWL_OK = 0,
    DWL_ERR_CONFIG = 1,            /* unreadable/invalid configuration */
    DWL_ERR_ESTIMATE_FAILED = 2,   /* run finished but some target rows FAILed */
    DWL_ERR_INVALID_ARG = 3,
    DWL_ERR_IO = 4,
    DWL_ERR_INTERNAL = 5
} dwl_status;

/* Opaque run session: a parsed configuration plus its outputs. */
typedef struct dwl_session dwl_session;

const char* dwl_version(void);

/* Create a session from a TOML-syntax config file or from config text.
 * On failure returns the error code and leaves *out untouched; the message
 * is available from dwl_last_error(). */
dwl_status dwl_session_open(const char* config_path, dwl_session** out);
dwl_status dwl_session_open_text(const char* config_text, dwl_session** out);

/* Override the output directory before running. */
dwl_status dwl_session_set_output_dir(dwl_session* s, const char* dir);

/* Execute the configured probes and solver runs, writing one JSON + CSV per
 * probe, summary.csv, and manifest.json into the output directory. Returns
 * DWL_OK when every summary row passes, DWL_ERR_ESTIMATE_FAILED when the run
 * completed with failing rows (count stored in *failures_out when given). */
dwl_status dwl_session_run(dwl_session* s, int* failures_out);

/* PASS/FAIL summary table (CSV) of the last run; owned by the session. */
const char* dwl_session_summary(dwl_session* s);

/* Last error message on this session; empty string if none. */
const char* dwl_session_last_error(dwl_session* s);

/* Last error from session-creation calls on this thread. */
const char* dwl_last_error(void);

void dwl_session_close(dwl_session* s);

/* Probe catalog, as text (as_json = 0) or machine-readable JSON including a
 * config schema (as_json = 1). Free with dwl_string_free. */
char* dwl_list_probes(int as_json);

/* Human-readable digest of a stored report JSON file. Free with
 * dwl_string_free. Returns NULL on error (message via dwl_last_error). */
char* dwl_report_render(const char* json_path);

void dwl_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DWL_H */
