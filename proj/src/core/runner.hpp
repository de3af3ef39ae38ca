#pragma once
#include "core/config.hpp"
#include "core/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dwl::runner {

struct RunConfig {
    std::string output_dir = "out";
    int threads = 1;
    std::uint64_t seed = 2026;
    config::Tree tree;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_text(const std::string& text);
};

struct ProbeInfo {
    std::string name;
    std::string description;
    std::string verifies; // which estimate the probe exercises
    std::vector<std::string> parameters;
};

const std::vector<ProbeInfo>& probe_catalog();
std::string list_probes_text();
std::string list_probes_json();

struct RunResult {
    int failures = 0;
    int probes_run = 0;
    std::vector<report::SummaryRow> summary;
    std::string summary_csv;
};

// Executes the probes and solver runs selected in the config, writing one
// JSON + one CSV per probe, a PASS/FAIL summary table, and a manifest.
// Throws config::ConfigError on configuration problems.
RunResult run(const RunConfig& cfg);

// Human-readable digest of a stored probe-report JSON file.
std::string render_report_file(const std::string& json_path);

std::string version_string();

} // namespace dwl::runner
