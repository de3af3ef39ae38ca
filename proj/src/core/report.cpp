#include "core/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <set>
#include <sstream>

namespace dwl::report {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // trim to the shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        double back = std::strtod(probe, nullptr);
        if (back == v) return probe;
    }
    return buf;
}

std::string ProbeReport::to_json(int indent) const {
    nlohmann::json j;
    j["probe"] = probe;
    j["params"] = params;
    j["environment"] = environment;
    j["samples"] = nlohmann::json::array();
    for (const auto& s : samples)
        j["samples"].push_back({{"coords", s.coords}, {"value", s.value}});
    j["fits"] = nlohmann::json::object();
    for (const auto& [key, fit] : fits)
        j["fits"][key] = {{"fitted_exponent", fit.slope},
                          {"fitted_constant", std::exp(fit.intercept)},
                          {"log_intercept", fit.intercept},
                          {"residual", fit.residual}};
    j["warnings"] = warnings;
    return j.dump(indent);
}

std::string ProbeReport::to_csv() const {
    std::set<std::string> keys;
    for (const auto& s : samples)
        for (const auto& [k, v] : s.coords) keys.insert(k);
    std::ostringstream out;
    out << "probe";
    for (const auto& k : keys) out << "," << k;
    out << ",value\n";
    for (const auto& s : samples) {
        out << probe;
        for (const auto& k : keys) {
            auto it = s.coords.find(k);
            out << ",";
            if (it != s.coords.end()) out << format_double(it->second);
        }
        out << "," << format_double(s.value) << "\n";
    }
    return out.str();
}

std::string render_summary(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "probe,quantity,fitted,target,slack,status\n";
    for (const auto& r : rows) {
        out << r.probe << "," << r.quantity << "," << format_double(r.fitted) << ","
            << format_double(r.predicted) << "," << format_double(r.slack) << ","
            << (r.pass ? "PASS" : "FAIL") << "\n";
    }
    return out.str();
}

} // namespace dwl::report
