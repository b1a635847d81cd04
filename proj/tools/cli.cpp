#include "scenario.hpp"

#include "drcomp/errors.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace drcomp::cli {

Json assemble_report(const std::vector<ScenarioResult>& results, const RunOptions& options) {
    Json report;
    report["format_version"] = kFormatVersion;
    Json settings;
    settings["seed"] = options.seed;
    settings["quad_order"] = options.quad_order;
    settings["max_weight"] = options.max_weight ? Json(*options.max_weight) : Json(nullptr);
    settings["tolerance"] = options.tolerance ? Json(*options.tolerance) : Json(nullptr);
    settings["checks"] = options.only;
    report["settings"] = settings;
    Json scenarios = Json::array();
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& r : results) {
        scenarios.push_back(r.report);
        passed += r.passed;
        failed += r.failed;
        skipped += r.skipped;
    }
    report["scenarios"] = scenarios;
    report["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}};
    return report;
}

namespace {

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string period_text(const Json& p) {
    if (!p["exact"].is_null()) return p["exact"].get<std::string>();
    return number(p["value"].get<double>());
}

/// One short value per check for the table.
std::string headline(const Json& entry) {
    if (!entry.contains("values")) return entry.value("reason", "");
    const Json& v = entry["values"];
    if (entry["status"] == "fail" && entry.contains("reason")) return entry["reason"][0].get<std::string>();
    if (v.contains("dimension"))
        return "dim " + std::to_string(v["dimension"].get<std::size_t>()) +
               (v["stabilized"].get<bool>() ? " (stabilized)" : " (not stabilized)");
    if (v.contains("pairing")) return "pairing " + period_text(v["pairing"]);
    if (v.contains("lhs")) return "lhs " + period_text(v["lhs"]) + ", residual " + period_text(v["residual"]);
    if (v.contains("xi")) return "xi " + period_text(v["xi"]);
    if (v.contains("max_abs_residual")) return "max residual " + number(v["max_abs_residual"].get<double>());
    if (v.contains("witness_simplex"))
        return "on " + v["witness_simplex"].get<std::string>() + ": " + v["tau_of_wedge"].get<std::string>() +
               " vs " + v["cup_of_taus"].get<std::string>();
    if (v.contains("valid")) return v["valid"].get<bool>() ? "valid" : v["message"].get<std::string>();
    for (const char* key : {"pairs_checked", "triples_checked", "forms_checked", "families_checked", "maps_checked",
                            "trials", "products_checked"})
        if (v.contains(key)) return std::string(key) + " " + std::to_string(v[key].get<long>());
    return "";
}

}  // namespace

std::string summary_table(const std::vector<ScenarioResult>& results) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-20s %-26s %-6s %s\n", "scenario", "check", "status", "detail");
    out << line;
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& r : results) {
        for (const auto& c : r.report["checks"]) {
            std::snprintf(line, sizeof line, "%-20s %-26s %-6s ", r.report["scenario"].get<std::string>().c_str(),
                          c["name"].get<std::string>().c_str(), c["status"].get<std::string>().c_str());
            out << line << headline(c) << "\n";
        }
        passed += r.passed;
        failed += r.failed;
        skipped += r.skipped;
    }
    out << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    return out.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Checks the comparison between algebraic de Rham forms and singular cochains"};
    std::string scenario_path, builtin_name, report_path;
    RunOptions options;
    unsigned max_weight = 0;
    double tolerance = 0;
    bool list = false;
    auto* scenario_opt = app.add_option("--scenario", scenario_path, "scenario file (YAML)");
    auto* builtin_opt =
        app.add_option("--builtin", builtin_name, "builtin scenario name, or 'all' for the whole corpus");
    scenario_opt->excludes(builtin_opt);
    app.add_option("--check", options.only, "only run these checks (names or types)")->delimiter(',');
    auto* weight_opt = app.add_option("--max-weight", max_weight, "weight cutoff for cohomology checks");
    app.add_option("--quad-order", options.quad_order, "Gauss-Legendre order")->check(CLI::Range(2u, 64u));
    auto* tol_opt = app.add_option("--tolerance", tolerance, "absolute tolerance for numeric comparisons")
                        ->check(CLI::NonNegativeNumber);
    app.add_option("--report", report_path, "write the JSON report here");
    app.add_option("--seed", options.seed, "seed for randomized checks");
    app.add_flag("--list", list, "list the builtin scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (*weight_opt) options.max_weight = max_weight;
    if (*tol_opt) options.tolerance = tolerance;

    if (list) {
        for (const auto& b : builtins()) {
            char line[160];
            std::snprintf(line, sizeof line, "%-20s %s\n", b.name.c_str(), b.description.c_str());
            out << line;
        }
        return 0;
    }
    if (!*scenario_opt && !*builtin_opt) {
        err << "error: give --scenario, --builtin or --list\n";
        return 2;
    }

    std::vector<Scenario> scenarios;
    try {
        if (*scenario_opt) {
            scenarios.push_back(load_scenario_file(scenario_path));
        } else if (builtin_name == "all") {
            for (const auto& b : builtins()) scenarios.push_back(load_scenario(b.text, b.name));
        } else {
            const Builtin* b = find_builtin(builtin_name);
            if (!b) {
                err << "error: unknown builtin '" << builtin_name << "' (see --list)\n";
                return 2;
            }
            scenarios.push_back(load_scenario(b->text, b->name));
        }
        for (const auto& name : options.only) {
            bool known = false;
            for (const auto& s : scenarios)
                for (const auto& c : s.checks) known = known || c.name == name || c.type == name;
            if (!known) throw ValidationError("--check names no check: '" + name + "'");
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::vector<ScenarioResult> results;
    try {
        for (const auto& s : scenarios) results.push_back(run_scenario(s, options));
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const Json report = assemble_report(results, options);
    if (!report_path.empty()) {
        std::ofstream file(report_path);
        if (!file) {
            err << "error: cannot write " << report_path << "\n";
            return 2;
        }
        file << report.dump(2) << "\n";
    }
    out << summary_table(results);
    return report["summary"]["failed"].get<std::size_t>() == 0 ? 0 : 1;
}

}  // namespace drcomp::cli
