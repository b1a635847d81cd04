#pragma once

#include "drcomp/comparison.hpp"
#include "drcomp/derham.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace drcomp::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr unsigned kDefaultQuadOrder = 16;
/// Numeric checks pass within max(10 * error estimate, this floor scaled by
/// the size of the expected value).
inline constexpr double kToleranceFloor = 1e-9;

struct CheckSpec {
    std::string name;
    std::string type;
    YAML::Node params;
};

struct Scenario {
    std::string name;
    std::string description;
    AlgebraPtr algebra;  ///< null for scenarios that only use the simplex side
    std::vector<std::pair<std::string, AlgebraicForm>> forms;
    comparison::FamilyPtr family;
    std::vector<std::pair<std::string, comparison::SingularChain>> chains;
    std::vector<CheckSpec> checks;

    const AlgebraicForm& form(const std::string& name) const;
    std::size_t simplex(const std::string& name) const;
    const comparison::SingularChain& chain(const std::string& name) const;
};

/// Parses and validates a scenario. Throws ParseError for malformed text and
/// ValidationError for unknown keys, undefined names or inconsistent lanes.
Scenario load_scenario(const std::string& text, const std::string& source = "<scenario>");
Scenario load_scenario_file(const std::string& path);

struct RunOptions {
    std::vector<std::string> only;  ///< check names or types; empty runs all
    std::optional<unsigned> max_weight;
    unsigned quad_order = kDefaultQuadOrder;
    std::optional<double> tolerance;
    std::uint64_t seed = kDefaultSeed;
};

struct ScenarioResult {
    Json report;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
};

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options);

/// Report for several scenarios with the settings that produced it.
Json assemble_report(const std::vector<ScenarioResult>& results, const RunOptions& options);
/// The human summary table.
std::string summary_table(const std::vector<ScenarioResult>& results);

struct Builtin {
    std::string name;
    std::string description;
    std::string text;  ///< scenario source
};
const std::vector<Builtin>& builtins();
const Builtin* find_builtin(const std::string& name);

/// Entry point shared by the executable and the tests; returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace drcomp::cli
