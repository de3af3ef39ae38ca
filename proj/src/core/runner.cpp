#include "core/runner.hpp"

#include "core/angular.hpp"
#include "core/multiplier.hpp"
#include "core/nonlinear.hpp"
#include "core/normbench.hpp"
#include "core/propagator.hpp"
#include "core/snapshot.hpp"
#include "core/solver.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

namespace dwl::runner {

namespace fs = std::filesystem;
using config::ConfigError;
using config::Tree;
using report::ExponentTarget;
using report::ProbeReport;
using report::SummaryRow;

std::string version_string() { return "0.1.0"; }

RunConfig RunConfig::from_file(const std::string& path) {
    RunConfig cfg;
    cfg.tree = Tree::parse_file(path);
    cfg.output_dir = cfg.tree.get_string("output_dir", cfg.output_dir);
    cfg.threads = static_cast<int>(cfg.tree.get_number("threads", 1));
    cfg.seed = static_cast<std::uint64_t>(cfg.tree.get_number("seed", 2026));
    return cfg;
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    cfg.tree = Tree::parse(text);
    cfg.output_dir = cfg.tree.get_string("output_dir", cfg.output_dir);
    cfg.threads = static_cast<int>(cfg.tree.get_number("threads", 1));
    cfg.seed = static_cast<std::uint64_t>(cfg.tree.get_number("seed", 2026));
    return cfg;
}

namespace {

void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct TargetSpec {
    std::string fit_key;
    ExponentTarget::Direction direction;
    std::function<double(const Tree&, const std::string&)> predicted;
    double slack;
};

// Per-probe execution and default acceptance targets. `prefix` is the dotted
// config path of the probe section.
struct ProbeEntry {
    ProbeInfo info;
    std::function<ProbeReport(const Tree&, const std::string&, std::uint64_t)> execute;
    std::vector<TargetSpec> targets;
};

double qeta_of(const Tree& t, const std::string& prefix) {
    double eta = t.get_number(prefix + ".eta", 0.1);
    return 4.0 / (1.0 - eta);
}

const std::vector<ProbeEntry>& registry() {
    static const std::vector<ProbeEntry> entries = [] {
        std::vector<ProbeEntry> v;

        v.push_back(
            {{"strichartz",
              "mixed-norm growth of localized free waves",
              "angular-improved Strichartz bound of the linear flow",
              {"lambda", "N", "eta", "T", "m", "l", "trials", "lambda_for_n", "n_for_lambda",
               "klein_gordon_mass"}},
             [](const Tree& t, const std::string& p, std::uint64_t seed) {
                 propagator::StrichartzParams sp;
                 sp.lambda_sweep = t.get_numbers(p + ".lambda", sp.lambda_sweep);
                 sp.n_sweep = t.get_numbers(p + ".N", sp.n_sweep);
                 sp.eta = t.get_number(p + ".eta", sp.eta);
                 sp.window = t.get_number(p + ".T", sp.window);
                 sp.grid_m = static_cast<int>(t.get_number(p + ".m", sp.grid_m));
                 sp.grid_l = t.get_number(p + ".l", sp.grid_l);
                 sp.trials = static_cast<int>(t.get_number(p + ".trials", sp.trials));
                 sp.lambda_for_n_sweep =
                     t.get_number(p + ".lambda_for_n", sp.lambda_for_n_sweep);
                 sp.n_for_lambda_sweep =
                     t.get_number(p + ".n_for_lambda", sp.n_for_lambda_sweep);
                 double m = t.get_number(p + ".klein_gordon_mass", 0.0);
                 if (m > 0.0) sp.law = DispersionLaw::klein_gordon(m);
                 sp.seed = seed;
                 return propagator::strichartz_probe(sp);
             },
             {{"lambda_exponent", ExponentTarget::Direction::at_most,
               [](const Tree& t, const std::string& p) { return 1.0 - 3.0 / qeta_of(t, p); },
               0.15},
              {"N_exponent", ExponentTarget::Direction::at_most,
               [](const Tree& t, const std::string& p) {
                   return 0.5 + t.get_number(p + ".eta", 0.1);
               },
               0.15}}});

        v.push_back({{"bernstein",
                      "cap-localized sup-norm against the volume factor",
                      "Bernstein inequality for annulus-cap pieces",
                      {"lambda", "alpha", "p", "m", "l", "trials"}},
                     [](const Tree& t, const std::string& p, std::uint64_t seed) {
                         multiplier::BernsteinParams bp;
                         bp.lambda_sweep = t.get_numbers(p + ".lambda", bp.lambda_sweep);
                         bp.alpha = t.get_number(p + ".alpha", bp.alpha);
                         bp.p = t.get_number(p + ".p", bp.p);
                         bp.grid_m = static_cast<int>(t.get_number(p + ".m", bp.grid_m));
                         bp.grid_l = t.get_number(p + ".l", bp.grid_l);
                         bp.trials = static_cast<int>(t.get_number(p + ".trials", bp.trials));
                         bp.seed = seed;
                         return multiplier::bernstein_probe(bp);
                     },
                     {{"lambda_exponent", ExponentTarget::Direction::at_most,
                       [](const Tree& t, const std::string& p) {
                           return 3.0 / t.get_number(p + ".p", 2.0);
                       },
                       0.15}}});

        v.push_back(
            {{"concentration",
              "cap mass of angularly regular pieces against (alpha N)^s",
              "angular concentration bound for cap-localized pieces",
              {"lambda", "alphaN", "p", "s", "m", "l", "trials"}},
             [](const Tree& t, const std::string& p, std::uint64_t seed) {
                 angular::ConcentrationParams cp;
                 cp.lambda = t.get_number(p + ".lambda", cp.lambda);
                 cp.p = t.get_number(p + ".p", cp.p);
                 cp.s = t.get_number(p + ".s", cp.s);
                 cp.grid_m = static_cast<int>(t.get_number(p + ".m", cp.grid_m));
                 cp.grid_l = t.get_number(p + ".l", cp.grid_l);
                 cp.trials = static_cast<int>(t.get_number(p + ".trials", cp.trials));
                 auto alphan = t.get_numbers(p + ".alphaN", {});
                 if (!alphan.empty()) {
                     cp.alpha_n_pairs.clear();
                     for (double an : alphan) {
                         int n = std::max(1, static_cast<int>(std::round(an * 8.0)));
                         cp.alpha_n_pairs.push_back({an / n, n});
                     }
                 }
                 cp.seed = seed;
                 return angular::concentration_probe(cp);
             },
             {{"alphaN_exponent", ExponentTarget::Direction::at_least,
               [](const Tree&, const std::string&) { return 0.0; }, 0.05}}});

        v.push_back(
            {{"decay",
              "sup-norm decay of unit-frequency free waves",
              "t^{-(n-1)/2} dispersive decay of the half-wave flow",
              {"times", "m", "l", "width"}},
             [](const Tree& t, const std::string& p, std::uint64_t seed) {
                 propagator::DecayParams dp;
                 dp.times = t.get_numbers(p + ".times", dp.times);
                 dp.grid_m = static_cast<int>(t.get_number(p + ".m", dp.grid_m));
                 dp.grid_l = t.get_number(p + ".l", dp.grid_l);
                 dp.bump_width = t.get_number(p + ".width", dp.bump_width);
                 dp.seed = seed;
                 return propagator::decay_probe(dp);
             },
             {{"decay_exponent", ExponentTarget::Direction::at_most,
               [](const Tree&, const std::string&) { return -1.0; }, 0.2},
              {"decay_exponent", ExponentTarget::Direction::at_least,
               [](const Tree&, const std::string&) { return -1.0; }, 0.2}}});

        v.push_back(
            {{"null_symbol",
              "angle scaling of the null-form output on mode pairs",
              "one-power angle gain of the Q-type null forms",
              {"angles", "radius", "m", "l"}},
             [](const Tree& t, const std::string& p, std::uint64_t seed) {
                 nonlinear::NullSymbolParams np;
                 np.angles = t.get_numbers(p + ".angles", np.angles);
                 np.mode_radius = t.get_number(p + ".radius", np.mode_radius);
                 np.grid_m = static_cast<int>(t.get_number(p + ".m", np.grid_m));
                 np.grid_l = t.get_number(p + ".l", np.grid_l);
                 np.seed = seed;
                 return nonlinear::null_symbol_probe(np);
             },
             {{"angle_exponent", ExponentTarget::Direction::at_most,
               [](const Tree&, const std::string&) { return 1.0; }, 0.1},
              {"angle_exponent", ExponentTarget::Direction::at_least,
               [](const Tree&, const std::string&) { return 1.0; }, 0.1}}});

        v.push_back(
            {{"high_modulation",
              "modulation-filtered norms against d^{-1/q} V^2",
              "high-modulation bound for 2-variation paths",
              {"d_bins", "q", "frames", "m", "l", "scale", "trials"}},
             [](const Tree& t, const std::string& p, std::uint64_t seed) {
                 normbench::HighModulationParams hp;
                 auto bins = t.get_numbers(p + ".d_bins", {});
                 if (!bins.empty()) {
                     hp.d_bins.clear();
                     for (double b : bins) hp.d_bins.push_back(static_cast<int>(b));
                 }
                 hp.q = t.get_number(p + ".q", hp.q);
                 hp.frames = static_cast<int>(t.get_number(p + ".frames", hp.frames));
                 hp.grid_m = static_cast<int>(t.get_number(p + ".m", hp.grid_m));
                 hp.grid_l = t.get_number(p + ".l", hp.grid_l);
                 hp.data_scale = t.get_number(p + ".scale", hp.data_scale);
                 hp.trials = static_cast<int>(t.get_number(p + ".trials", hp.trials));
                 hp.seed = seed;
                 return normbench::high_modulation_probe(hp);
             },
             {}});

        v.push_back(
            {{"bilinear",
              "localized L^2 bilinear estimate for Klein-Gordon waves",
              "frequency-localised bilinear bound with angular gain",
              {"lambda_high", "lambda0", "N", "eta", "mass", "T", "m", "l", "trials"}},
             [](const Tree& t, const std::string& p, std::uint64_t seed) {
                 normbench::BilinearParams bp;
                 bp.lambda_high = t.get_number(p + ".lambda_high", bp.lambda_high);
                 bp.lambda0_sweep = t.get_numbers(p + ".lambda0", bp.lambda0_sweep);
                 bp.n_sweep = t.get_numbers(p + ".N", bp.n_sweep);
                 bp.eta = t.get_number(p + ".eta", bp.eta);
                 bp.mass = t.get_number(p + ".mass", bp.mass);
                 bp.window = t.get_number(p + ".T", bp.window);
                 bp.grid_m = static_cast<int>(t.get_number(p + ".m", bp.grid_m));
                 bp.grid_l = t.get_number(p + ".l", bp.grid_l);
                 bp.trials = static_cast<int>(t.get_number(p + ".trials", bp.trials));
                 bp.seed = seed;
                 return normbench::bilinear_probe(bp);
             },
             {{"delta_exponent", ExponentTarget::Direction::at_least,
               [](const Tree&, const std::string&) { return 0.125; }, 0.05},
              {"N_exponent", ExponentTarget::Direction::at_most,
               [](const Tree& t, const std::string& p) {
                   return 1.0 - t.get_number(p + ".eta", 0.05);
               },
               0.15}}});

        v.push_back(
            {{"trilinear",
              "null-form trilinear integral for the wave system",
              "frequency-localised trilinear null-form bound",
              {"lambda_high", "mu", "eta", "T", "m", "l", "trials", "modulation_split"}},
             [](const Tree& t, const std::string& p, std::uint64_t seed) {
                 normbench::TrilinearParams tp;
                 tp.lambda_high = t.get_number(p + ".lambda_high", tp.lambda_high);
                 tp.mu_sweep = t.get_numbers(p + ".mu", tp.mu_sweep);
                 tp.eta = t.get_number(p + ".eta", tp.eta);
                 tp.window = t.get_number(p + ".T", tp.window);
                 tp.grid_m = static_cast<int>(t.get_number(p + ".m", tp.grid_m));
                 tp.grid_l = t.get_number(p + ".l", tp.grid_l);
                 tp.trials = static_cast<int>(t.get_number(p + ".trials", tp.trials));
                 tp.modulation_split = t.get_bool(p + ".modulation_split", false);
                 tp.seed = seed;
                 return normbench::trilinear_probe(tp);
             },
             {{"delta_exponent", ExponentTarget::Direction::at_least,
               [](const Tree&, const std::string&) { return 0.125; }, 0.05},
              {"N_exponent", ExponentTarget::Direction::at_most,
               [](const Tree& t, const std::string& p) {
                   return 1.0 - t.get_number(p + ".eta", 0.05);
               },
               0.15}}});

        return v;
    }();
    return entries;
}

nlohmann::json solve_report_json(const solver::SolveReport& rep) {
    return {{"iterations", rep.iterations},
            {"diff_norms", rep.diff_norms},
            {"contracted", rep.contracted},
            {"final_residual", rep.final_residual},
            {"scattering_diffs", rep.scattering_diffs},
            {"charge_drift", rep.charge_drift},
            {"omega_weighted_data_norm", rep.omega_weighted_data_norm},
            {"pi_invariance", rep.pi_invariance},
            {"warnings", rep.warnings}};
}

} // namespace

const std::vector<ProbeInfo>& probe_catalog() {
    static const std::vector<ProbeInfo> infos = [] {
        std::vector<ProbeInfo> out;
        for (const auto& e : registry()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

std::string list_probes_text() {
    std::ostringstream out;
    out << "available probes:\n";
    for (const auto& p : probe_catalog()) {
        out << "  " << p.name << "\n    " << p.description << "\n    verifies: "
            << p.verifies << "\n    parameters: ";
        for (std::size_t i = 0; i < p.parameters.size(); ++i)
            out << (i ? ", " : "") << p.parameters[i];
        out << "\n";
    }
    out << "solver runs: [solvers.wave], [solvers.dirac] sections\n";
    return out.str();
}

std::string list_probes_json() {
    nlohmann::json j;
    j["version"] = version_string();
    j["probes"] = nlohmann::json::array();
    for (const auto& p : probe_catalog())
        j["probes"].push_back({{"name", p.name},
                               {"description", p.description},
                               {"verifies", p.verifies},
                               {"parameters", p.parameters}});
    j["config_schema"] = {
        {"output_dir", "string"},
        {"threads", "number"},
        {"seed", "number"},
        {"probes.<name>.*", "per-probe parameters, see probes[]"},
        {"targets.<probe>.<fit>.predicted", "number (override)"},
        {"targets.<probe>.<fit>.slack", "number (override)"},
        {"solvers.wave|dirac",
         "epsilon, T, dt, m, l, scale, max_iterations, snapshot_stride"}};
    return j.dump(2);
}

namespace {

struct ProbeOutcome {
    ProbeReport report;
    std::vector<SummaryRow> rows;
};

ProbeOutcome run_probe(const ProbeEntry& entry, const Tree& tree, std::uint64_t seed) {
    const std::string prefix = "probes." + entry.info.name;
    ProbeOutcome out;
    out.report = entry.execute(tree, prefix, seed);
    for (const auto& t : entry.targets) {
        auto it = out.report.fits.find(t.fit_key);
        if (it == out.report.fits.end()) continue;
        ExponentTarget target;
        target.probe = entry.info.name;
        target.fit_key = t.fit_key;
        target.direction = t.direction;
        std::string tp = "targets." + entry.info.name + "." + t.fit_key;
        target.predicted = tree.get_number(tp + ".predicted", t.predicted(tree, prefix));
        target.slack = tree.get_number(tp + ".slack", t.slack);
        SummaryRow row;
        row.probe = entry.info.name;
        row.quantity = t.fit_key + (t.direction == ExponentTarget::Direction::at_most
                                        ? " <= "
                                        : " >= ") +
                       report::format_double(target.bound());
        row.fitted = it->second.slope;
        row.predicted = target.predicted;
        row.slack = target.slack;
        row.pass = target.pass(it->second.slope);
        out.rows.push_back(row);
    }
    // probes with boundedness contracts rather than slope targets
    if (entry.info.name == "high_modulation") {
        double spread = out.report.params.count("ratio_spread")
                            ? out.report.params.at("ratio_spread")
                            : 0.0;
        SummaryRow row;
        row.probe = entry.info.name;
        row.quantity = "ratio_spread <= 5";
        row.fitted = spread;
        row.predicted = 4.0;
        row.slack = 1.0;
        row.pass = spread > 0.0 && spread <= 5.0;
        out.rows.push_back(row);
    }
    return out;
}

void run_solver_section(const Tree& tree, const std::string& name,
                        const fs::path& outdir, std::uint64_t seed,
                        std::vector<SummaryRow>& rows) {
    const std::string p = "solvers." + name;
    solver::PicardConfig cfg;
    cfg.system = name == "wave" ? solver::PicardConfig::System::wave_null
                                : solver::PicardConfig::System::dirac_hartree;
    cfg.epsilon = tree.get_number(p + ".epsilon", cfg.epsilon);
    cfg.window = tree.get_number(p + ".T", cfg.window);
    cfg.dt = tree.get_number(p + ".dt", cfg.dt);
    cfg.grid_m = static_cast<int>(tree.get_number(p + ".m", cfg.grid_m));
    cfg.grid_l = tree.get_number(p + ".l", cfg.grid_l);
    cfg.data_scale = tree.get_number(p + ".scale", cfg.data_scale);
    cfg.max_iterations =
        static_cast<int>(tree.get_number(p + ".max_iterations", cfg.max_iterations));
    cfg.yukawa_b = tree.get_number(p + ".b", cfg.yukawa_b);
    cfg.mass = tree.get_number(p + ".mass", cfg.mass);
    cfg.seed = seed;
    auto times = tree.get_numbers(p + ".scattering_times", cfg.scattering_times);
    cfg.scattering_times = times;

    solver::SolveReport rep;
    solver::PicardSolution sol;
    if (cfg.system == solver::PicardConfig::System::wave_null) {
        sol = solver::picard_solve_wave(solver::make_wave_data(cfg), cfg, rep);
    } else {
        sol = solver::picard_solve_dirac(solver::make_dirac_data(cfg), cfg, rep);
    }
    nlohmann::json j = solve_report_json(rep);
    j["system"] = name;
    j["epsilon"] = cfg.epsilon;
    j["seed"] = cfg.seed;
    atomic_write(outdir / ("solve_" + name + ".json"), j.dump(2));

    int stride = static_cast<int>(tree.get_number(p + ".snapshot_stride", 0));
    if (stride > 0) {
        fs::create_directories(outdir / "snapshots");
        for (int k = 0; k < sol.plus.sample_count(); k += stride) {
            grid::Field psi = sol.plus.frames[k];
            grid::axpy(psi, grid::cplx(1.0, 0.0), sol.minus.frames[k]);
            save_snapshot(psi, (outdir / "snapshots" /
                                (name + "_" + std::to_string(k) + ".dwl"))
                                   .string());
        }
    }

    SummaryRow row;
    row.probe = "solver_" + name;
    row.quantity = "contraction_ratio <= 0.5";
    double ratio = 1e300;
    if (rep.diff_norms.size() >= 2 && rep.diff_norms[0] > 0.0)
        ratio = rep.diff_norms[1] / rep.diff_norms[0];
    row.fitted = ratio;
    row.predicted = 0.5;
    row.slack = 0.0;
    row.pass = ratio <= 0.5;
    rows.push_back(row);
    if (name == "dirac") {
        SummaryRow drift;
        drift.probe = "solver_dirac";
        drift.quantity = "charge_drift <= 1e-4";
        drift.fitted = rep.charge_drift;
        drift.predicted = 1e-4;
        drift.slack = 0.0;
        drift.pass = rep.charge_drift <= 1e-4;
        rows.push_back(drift);
    }
}

} // namespace

RunResult run(const RunConfig& cfg) {
    const Tree& tree = cfg.tree;
    fs::path outdir = cfg.output_dir;
    fs::create_directories(outdir);

    // validate referenced probes up front
    auto selected = tree.children("probes");
    for (const auto& name : selected) {
        bool known = false;
        for (const auto& e : registry()) known |= e.info.name == name;
        if (!known) {
            int line = 0;
            for (const auto& [k, v] : tree.entries())
                if (k.rfind("probes." + name + ".", 0) == 0) {
                    line = v.line;
                    break;
                }
            throw ConfigError(line, "probes." + name, "unknown probe");
        }
    }
    for (const auto& name : tree.children("solvers"))
        if (name != "wave" && name != "dirac")
            throw ConfigError(0, "solvers." + name, "unknown solver section");

    RunResult result;
    int pool = cfg.threads;
    if (const char* env = std::getenv("DWL_THREADS")) pool = std::atoi(env);
    pool = std::max(1, pool);

    std::vector<const ProbeEntry*> chosen;
    for (const auto& e : registry())
        for (const auto& name : selected)
            if (e.info.name == name) chosen.push_back(&e);

    // probe pool; each probe derives its RNG from the global seed so the
    // outputs do not depend on scheduling
    std::vector<std::future<ProbeOutcome>> futures;
    std::size_t next = 0;
    std::vector<ProbeOutcome> outcomes(chosen.size());
    while (next < chosen.size()) {
        std::size_t batch = std::min<std::size_t>(pool, chosen.size() - next);
        futures.clear();
        for (std::size_t i = 0; i < batch; ++i) {
            const ProbeEntry* e = chosen[next + i];
            futures.push_back(std::async(std::launch::async, [&, e] {
                return run_probe(*e, tree, cfg.seed);
            }));
        }
        for (std::size_t i = 0; i < batch; ++i) outcomes[next + i] = futures[i].get();
        next += batch;
    }

    for (std::size_t i = 0; i < chosen.size(); ++i) {
        const auto& name = chosen[i]->info.name;
        atomic_write(outdir / (name + ".json"), outcomes[i].report.to_json());
        atomic_write(outdir / (name + ".csv"), outcomes[i].report.to_csv());
        for (auto& row : outcomes[i].rows) result.summary.push_back(row);
        ++result.probes_run;
    }

    for (const auto& name : tree.children("solvers"))
        run_solver_section(tree, name, outdir, cfg.seed, result.summary);

    for (const auto& row : result.summary)
        if (!row.pass) ++result.failures;

    result.summary_csv = report::render_summary(result.summary);
    atomic_write(outdir / "summary.csv", result.summary_csv);

    nlohmann::json manifest;
    manifest["version"] = version_string();
    manifest["seed"] = cfg.seed;
    manifest["config_fnv1a"] = fnv1a(tree.source_text());
    manifest["probes"] = selected;
    manifest["solvers"] = tree.children("solvers");
    manifest["failures"] = result.failures;
    manifest["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    atomic_write(outdir / "manifest.json", manifest.dump(2));
    return result;
}

std::string render_report_file(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("cannot open report " + json_path);
    nlohmann::json j = nlohmann::json::parse(in);
    std::ostringstream out;
    out << "probe: " << j.value("probe", "?") << "\n";
    if (j.contains("params")) {
        out << "params:";
        for (auto& [k, v] : j["params"].items()) out << " " << k << "=" << v.dump();
        out << "\n";
    }
    if (j.contains("fits"))
        for (auto& [k, v] : j["fits"].items())
            out << "fit " << k << ": exponent " << v.value("fitted_exponent", 0.0)
                << ", constant " << v.value("fitted_constant", 0.0) << ", residual "
                << v.value("residual", 0.0) << "\n";
    if (j.contains("samples")) out << "samples: " << j["samples"].size() << "\n";
    if (j.contains("warnings"))
        for (auto& w : j["warnings"]) out << "warning: " << w.get<std::string>() << "\n";
    // solver reports
    if (j.contains("diff_norms")) {
        out << "iterations: " << j.value("iterations", 0) << "\ndiff_norms:";
        for (auto& d : j["diff_norms"]) out << " " << d.dump();
        out << "\ncontracted: " << j.value("contracted", false)
            << "\nfinal_residual: " << j.value("final_residual", 0.0)
            << "\ncharge_drift: " << j.value("charge_drift", 0.0) << "\n";
    }
    return out.str();
}

} // namespace dwl::runner
