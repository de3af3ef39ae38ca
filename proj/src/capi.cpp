#include "dwl.h"

#include "core/config.hpp"
#include "core/runner.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using dwl::config::ConfigError;

struct dwl_session {
    dwl::runner::RunConfig config;
    std::string summary;
    std::string last_error;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
dwl_status open_impl(Fn&& make, dwl_session** out) {
    if (!out) return DWL_ERR_INVALID_ARG;
    try {
        auto* s = new dwl_session{make(), "", ""};
        *out = s;
        return DWL_OK;
    } catch (const ConfigError& e) {
        g_last_error = e.what();
        return DWL_ERR_CONFIG;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DWL_ERR_CONFIG;
    }
}

} // namespace

extern "C" {

const char* dwl_version(void) {
    static const std::string v = dwl::runner::version_string();
    return v.c_str();
}

dwl_status dwl_session_open(const char* config_path, dwl_session** out) {
    if (!config_path) return DWL_ERR_INVALID_ARG;
    return open_impl(
        [&] { return dwl::runner::RunConfig::from_file(config_path); }, out);
}

dwl_status dwl_session_open_text(const char* config_text, dwl_session** out) {
    if (!config_text) return DWL_ERR_INVALID_ARG;
    return open_impl(
        [&] { return dwl::runner::RunConfig::from_text(config_text); }, out);
}

dwl_status dwl_session_set_output_dir(dwl_session* s, const char* dir) {
    if (!s || !dir) return DWL_ERR_INVALID_ARG;
    s->config.output_dir = dir;
    return DWL_OK;
}

dwl_status dwl_session_run(dwl_session* s, int* failures_out) {
    if (!s) return DWL_ERR_INVALID_ARG;
    try {
        auto result = dwl::runner::run(s->config);
        s->summary = result.summary_csv;
        if (failures_out) *failures_out = result.failures;
        return result.failures == 0 ? DWL_OK : DWL_ERR_ESTIMATE_FAILED;
    } catch (const ConfigError& e) {
        s->last_error = e.what();
        return DWL_ERR_CONFIG;
    } catch (const std::bad_alloc&) {
        s->last_error = "out of memory";
        return DWL_ERR_INTERNAL;
    } catch (const std::exception& e) {
        s->last_error = e.what();
        return DWL_ERR_INTERNAL;
    }
}

const char* dwl_session_summary(dwl_session* s) {
    return s ? s->summary.c_str() : "";
}

const char* dwl_session_last_error(dwl_session* s) {
    return s ? s->last_error.c_str() : "";
}

const char* dwl_last_error(void) { return g_last_error.c_str(); }

void dwl_session_close(dwl_session* s) { delete s; }

char* dwl_list_probes(int as_json) {
    try {
        return dup_string(as_json ? dwl::runner::list_probes_json()
                                  : dwl::runner::list_probes_text());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

char* dwl_report_render(const char* json_path) {
    if (!json_path) {
        g_last_error = "null path";
        return nullptr;
    }
    try {
        return dup_string(dwl::runner::render_report_file(json_path));
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

void dwl_string_free(char* s) { std::free(s); }

} // extern "C"
