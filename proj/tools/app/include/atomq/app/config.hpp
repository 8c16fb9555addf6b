#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atomq/error.hpp"
#include "atomq/gates.hpp"

namespace atomq::app {

/// Bad configuration text or an inconsistent set of keys.
class ConfigError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

enum class Scenario { prepare_pair, cnot, pbg, bell_landscape, mermin, trajectories };

std::string_view to_string(Scenario s);

enum class TrajectoryProcess { pair, cavity_decay };

/// Validated scenario description.
///
/// Text format: one `key = value` per line, optional `[section]` headers,
/// `#` starts a comment, keys are case-sensitive. A key may appear before
/// the first header or inside its own section:
///
///   (top)      scenario
///   [system]   g kappa gamma n_max regime_threshold model
///   [protocol] omega_minus omega T inputs process n_qubits state
///   [grid]     omega_t vartheta g_t1 g_t2 t_end
///   [sampling] shots seed readout_error n_traj dt
///   [output]   out prefix
///
/// Numeric values accept `pi` factors (`pi/4`, `2*pi`, `-pi/2`); list
/// values accept comma lists, `linspace(a, b, n)` and `logspace(a, b, n)`
/// (geometric from a to b). `T = auto` selects pi/|omega_minus| for
/// prepare_pair and sqrt(2) pi/|omega| for cnot. Unknown keys or sections,
/// duplicates and unparsable numbers are errors.
struct ScenarioConfig {
    Scenario scenario = Scenario::prepare_pair;

    double g = 1.0;
    double kappa = 0.0;
    double gamma = 0.0;
    std::size_t n_max = 2;
    double regime_threshold = 0.1;
    EvolutionModel model = EvolutionModel::full;

    std::vector<double> omega_minus;
    std::vector<double> omega;
    bool t_auto = true;
    std::vector<double> durations;  // explicit T values when !t_auto
    std::vector<std::string> inputs{"00", "01", "10", "11"};
    TrajectoryProcess process = TrajectoryProcess::pair;
    std::size_t n_qubits = 3;
    std::string state = "ghz";

    std::vector<double> omega_t;
    std::vector<double> vartheta;
    std::vector<double> g_t1;
    std::vector<double> g_t2;
    std::vector<double> t_end;

    std::uint64_t shots = 0;
    std::uint64_t seed = 1;
    double readout_error = 0.0;
    std::uint64_t n_traj = 10000;
    double dt = 0.0;

    std::string out = ".";
    std::string prefix;

    /// Resolved pulse lengths for one omega_minus (prepare_pair).
    std::vector<double> pair_durations(double omega_minus_value) const;
};

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Evaluates a single numeric token such as "0.25", "pi/4" or "-2*pi".
double parse_number(std::string_view token);

/// Evaluates a list value: comma list, linspace(...) or logspace(...).
std::vector<double> parse_list(std::string_view value);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

}  // namespace atomq::app
