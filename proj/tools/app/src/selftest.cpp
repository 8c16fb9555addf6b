#include "atomq/app/selftest.hpp"

#include <string>

#include "atomq/app/config.hpp"
#include "atomq/app/runner.hpp"

namespace atomq::app {

namespace {

constexpr const char* kSamples[] = {
    "scenario = bell_landscape\n[grid]\nomega_t = linspace(0, 2*pi, 11)\nvartheta = linspace(0, pi, 7)\n"
    "[sampling]\nshots = 2000\nseed = 5\nreadout_error = 0.02\n",
    "scenario = prepare_pair\ng = 1\nkappa = 1\ngamma = 0.001\nomega_minus = 0.05, 0.1\nT = 10, 20, 31.4\n",
    "scenario = cnot\ng = 1\nkappa = 1\ngamma = 0\nomega = 0.05\ninputs = 00, 10\n",
    "scenario = pbg\ng = 2\ng_t1 = linspace(0, pi, 5)\ng_t2 = linspace(0, pi, 3)\n",
    "scenario = mermin\nn_qubits = 4\n",
    "scenario = trajectories\ng = 1\nkappa = 1\ngamma = 0.01\nomega_minus = 0.2\nt_end = 1, 4\n"
    "n_traj = 400\nseed = 11\n",
};

std::size_t expected_rows(const ScenarioConfig& c) {
    switch (c.scenario) {
        case Scenario::prepare_pair: {
            std::size_t n = 0;
            for (double w : c.omega_minus) n += c.pair_durations(w).size();
            return n;
        }
        case Scenario::cnot: return c.omega.size() * c.inputs.size();
        case Scenario::pbg: return c.g_t1.size() * c.g_t2.size();
        case Scenario::bell_landscape: return c.omega_t.size() * c.vartheta.size();
        case Scenario::mermin: return 1;
        case Scenario::trajectories: return c.t_end.size();
    }
    return 0;
}

}  // namespace

std::vector<verify::CheckResult> run_selftest(unsigned threads) {
    std::vector<verify::CheckResult> out = verify::run_invariant_suite();
    out.push_back(verify::timed_check("CSV bit-reproducibility", [&] {
        for (const char* text : kSamples) {
            const ScenarioConfig c = parse_config(text);
            const std::string a = run_scenario(c, threads).table.to_csv();
            const std::string b = run_scenario(c, threads == 1 ? 2 : 1).table.to_csv();
            if (a != b) {
                return verify::CheckResult{"", false, std::string(to_string(c.scenario)) + " differs", 0.0};
            }
        }
        return verify::CheckResult{"", true, "6 scenarios reproduced byte for byte", 0.0};
    }));
    out.push_back(verify::timed_check("CSV row counts", [&] {
        for (const char* text : kSamples) {
            const ScenarioConfig c = parse_config(text);
            const auto r = run_scenario(c, threads);
            if (r.table.rows.size() != expected_rows(c)) {
                return verify::CheckResult{"", false,
                                           std::string(to_string(c.scenario)) + ": " +
                                               std::to_string(r.table.rows.size()) + " rows, expected " +
                                               std::to_string(expected_rows(c)),
                                           0.0};
            }
        }
        return verify::CheckResult{"", true, "row count equals grid product", 0.0};
    }));
    return out;
}

}  // namespace atomq::app
