// Batch front-end over the dwl C API: configure grids, run probes and
// solves, emit reports. Exit codes: 0 all-pass, 1 config/usage error, 2 some
// estimate target failed.
#include <dwl.h>

#include <CLI11.hpp>

#include <cstdio>
#include <string>

namespace {

int cmd_run(const std::string& config_path, const std::string& output_override) {
    dwl_session* session = nullptr;
    dwl_status st = dwl_session_open(config_path.c_str(), &session);
    if (st != DWL_OK) {
        std::fprintf(stderr, "error: %s\n", dwl_last_error());
        return 1;
    }
    if (!output_override.empty())
        dwl_session_set_output_dir(session, output_override.c_str());
    int failures = 0;
    st = dwl_session_run(session, &failures);
    if (st == DWL_ERR_CONFIG) {
        std::fprintf(stderr, "error: %s\n", dwl_session_last_error(session));
        dwl_session_close(session);
        return 1;
    }
    if (st == DWL_ERR_INTERNAL) {
        std::fprintf(stderr, "error: %s\n", dwl_session_last_error(session));
        dwl_session_close(session);
        return 1;
    }
    std::fputs(dwl_session_summary(session), stdout);
    if (failures > 0)
        std::fprintf(stderr, "%d estimate target(s) FAILED\n", failures);
    dwl_session_close(session);
    return failures > 0 ? 2 : 0;
}

int cmd_list(bool as_json) {
    char* text = dwl_list_probes(as_json ? 1 : 0);
    if (!text) {
        std::fprintf(stderr, "error: %s\n", dwl_last_error());
        return 1;
    }
    std::fputs(text, stdout);
    dwl_string_free(text);
    return 0;
}

int cmd_show(const std::string& path) {
    char* text = dwl_report_render(path.c_str());
    if (!text) {
        std::fprintf(stderr, "error: %s\n", dwl_last_error());
        return 1;
    }
    std::fputs(text, stdout);
    dwl_string_free(text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("dwl ") + dwl_version() +
                 " - dispersive-estimate probes and small-data solvers"};
    app.require_subcommand(1);

    std::string config_path, output_override, report_path;
    bool as_json = false;

    auto* run = app.add_subcommand("run", "run the probes/solves of a config file");
    run->add_option("config", config_path, "TOML config path")->required();
    run->add_option("--output", output_override, "override the output directory");

    auto* list = app.add_subcommand("list-probes", "list available probes");
    list->add_flag("--json", as_json, "machine-readable listing with config schema");

    auto* show = app.add_subcommand("show-report", "summarize a stored report JSON");
    show->add_option("report", report_path, "path to a probe/solver report")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    if (run->parsed()) return cmd_run(config_path, output_override);
    if (list->parsed()) return cmd_list(as_json);
    if (show->parsed()) return cmd_show(report_path);
    return 1;
}
