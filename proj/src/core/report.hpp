#pragma once
#include "core/fitting.hpp"

#include <map>
#include <string>
#include <vector>

namespace dwl::report {

// One measured point of a parameter sweep.
struct Sample {
    std::map<std::string, double> coords;
    double value = 0.0;
};

// Probe outcome: raw samples, fitted power laws, and the environment needed
// to reproduce the run (grid, profile id, seed). Serialized as JSON with a
// CSV mirror carrying one sample per row.
struct ProbeReport {
    std::string probe;
    std::map<std::string, double> params;
    std::map<std::string, std::string> environment;
    std::vector<Sample> samples;
    std::map<std::string, normbench::FitResult> fits;
    std::vector<std::string> warnings;

    std::string to_json(int indent = 2) const;
    std::string to_csv() const;
};

// Predicted exponent plus acceptance slack for one fitted quantity.
struct ExponentTarget {
    std::string probe;
    std::string fit_key;
    enum class Direction { at_most, at_least } direction = Direction::at_most;
    double predicted = 0.0;
    double slack = 0.0; // must be > 0

    double bound() const {
        return direction == Direction::at_most ? predicted + slack : predicted - slack;
    }
    bool pass(double fitted) const {
        return direction == Direction::at_most ? fitted <= bound() : fitted >= bound();
    }
};

struct SummaryRow {
    std::string probe;
    std::string quantity;
    double fitted = 0.0;
    double predicted = 0.0;
    double slack = 0.0;
    bool pass = false;
};

std::string render_summary(const std::vector<SummaryRow>& rows);

// Deterministic shortest-round-trip double formatting shared by JSON/CSV.
std::string format_double(double v);

} // namespace dwl::report
