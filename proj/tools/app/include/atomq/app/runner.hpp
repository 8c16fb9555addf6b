#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "atomq/app/config.hpp"

namespace atomq::app {

/// A CSV table held as formatted cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Header row then data rows, comma separated, '\n' line endings.
    std::string to_csv() const;
};

/// %.9g with '.' as decimal separator regardless of locale.
std::string format_double(double x);

struct RunOutput {
    std::string csv_name;  // prefix + scenario + ".csv"
    Table table;
    std::string summary;
    std::vector<std::string> warnings;  // regime and Zeno warnings, non-fatal
};

/// Runs one scenario. Pure computation: nothing is written.
RunOutput run_scenario(const ScenarioConfig& config, unsigned threads = 1);

/// Writes the CSV and its "<stem>_summary.txt" into dir (created if missing).
/// Throws IoError.
void write_output(const RunOutput& output, const std::string& dir);

/// Built-in configurations behind `figure fig2|fig4|fig5|islands`.
std::vector<ScenarioConfig> figure_configs(std::string_view name);

}  // namespace atomq::app
