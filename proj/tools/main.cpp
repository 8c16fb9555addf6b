#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "atomq/app/config.hpp"
#include "atomq/app/runner.hpp"
#include "atomq/app/selftest.hpp"
#include "atomq/error.hpp"

namespace {

enum Exit { ok = 0, config_error = 1, numeric_error = 2, io_error = 3 };

struct Globals {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    bool quiet = false;
};

void emit(const atomq::app::RunOutput& r, const std::string& dir, bool quiet) {
    atomq::app::write_output(r, dir);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    if (!quiet) std::cout << r.summary << "wrote " << dir << "/" << r.csv_name << "\n\n";
}

int run_configs(const std::vector<atomq::app::ScenarioConfig>& configs, const Globals& g,
                const std::string& default_out) {
    for (auto c : configs) {
        if (g.seed) c.seed = *g.seed;
        const std::string dir = !g.out.empty() ? g.out : default_out.empty() ? c.out : default_out;
        emit(atomq::app::run_scenario(c, g.threads), dir, g.quiet);
    }
    return ok;
}

int selftest(const Globals& g) {
    const auto results = atomq::app::run_selftest(g.threads);
    bool all = true;
    double total = 0.0;
    for (const auto& r : results) {
        all = all && r.passed;
        total += r.seconds;
        if (!g.quiet || !r.passed) {
            std::printf("%s  %-40s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                        r.detail.c_str());
        }
    }
    std::printf("selftest %s (%.1fs)\n", all ? "passed" : "FAILED", total);
    return all ? ok : numeric_error;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cavity-QED entanglement and Bell-test simulator"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--out", g.out, "Output directory (overrides the config)");
    app.add_option("--seed", g.seed, "RNG seed (overrides the config)");
    app.add_option("--threads", g.threads, "Worker threads, 0 = hardware concurrency");
    app.add_flag("--quiet", g.quiet, "Only print warnings and errors");

    auto* run = app.add_subcommand("run", "Run a scenario config");
    run->add_option("config,--config", g.config, "Config file");

    auto* figure = app.add_subcommand("figure", "Write the data behind a built-in figure");
    std::string figure_name;
    figure->add_option("name", figure_name, "fig2, fig4, fig5 or islands")->required();

    app.add_subcommand("selftest", "Run the invariant suite");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*run) {
            if (g.config.empty()) throw atomq::InvalidInput("run needs a config file");
            return run_configs({atomq::app::load_config(g.config)}, g, "");
        }
        if (*figure) return run_configs(atomq::app::figure_configs(figure_name), g, "figures");
        return selftest(g);
    } catch (const atomq::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return io_error;
    } catch (const atomq::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return numeric_error;
    } catch (const atomq::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numeric_error;
    }
}
