#pragma once

#include "calckit/json_io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace calckit {

inline constexpr const char* toolkit_version = "calckit 1.0.0";

enum class OutputFormat { csv, json };

struct ExperimentConfig {
    std::string experiment;
    json params = json::object();
    std::string output_path;  // empty: standard output
    std::optional<OutputFormat> format;

    // Strict: unknown experiments, keys or ill-typed values raise ConfigError.
    static ExperimentConfig from_json(const json& j);
    json to_json() const;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

struct Artifact {
    json resolved;   // config with every default filled in
    json summary;
    Table table;
    OutputFormat default_format = OutputFormat::json;
};

std::vector<std::string> experiment_names();

// Fills defaults, validates keys and runs. Throws calckit errors.
Artifact run_experiment(const ExperimentConfig& cfg);
// Renders with the version and resolved config in the header.
std::string render(const Artifact& a, OutputFormat fmt);

// Exit codes: 0 success, 2 tolerance failure, 3 configuration error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace calckit
