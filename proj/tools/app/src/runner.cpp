#include "atomq/app/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "atomq/bell.hpp"
#include "atomq/dynamics.hpp"
#include "atomq/gates.hpp"
#include "atomq/pbg.hpp"
#include "atomq/trajectories.hpp"

namespace atomq::app {

namespace {

using std::numbers::pi;

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ", ";
        s += format_double(v[k]);
    }
    return s;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ", ";
        s += v[k];
    }
    return s;
}

std::string grid_text(const std::vector<double>& v) {
    if (v.size() <= 6) return join(v);
    return std::to_string(v.size()) + " points in [" + format_double(v.front()) + ", " +
           format_double(v.back()) + "]";
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

/// Ordered, de-duplicated warnings with a repeat count.
class WarningLog {
public:
    void add(const std::string& w) {
        if (counts_[w]++ == 0) order_.push_back(w);
    }
    void add(const std::vector<std::string>& ws) {
        for (const auto& w : ws) add(w);
    }
    std::vector<std::string> lines() const {
        std::vector<std::string> out;
        for (const auto& w : order_) {
            const std::size_t n = counts_.at(w);
            out.push_back(n > 1 ? w + " (x" + std::to_string(n) + ")" : w);
        }
        return out;
    }

private:
    std::vector<std::string> order_;
    std::map<std::string, std::size_t> counts_;
};

std::string regime_line(const RegimeReport& r) {
    return "gamma/|omega| = " + format_double(r.gamma_over_omega) +
           ", |omega| kappa/g^2 = " + format_double(r.omega_kappa_over_g2) +
           ", |omega|/kappa = " + format_double(r.omega_over_kappa) + ", threshold " +
           format_double(r.threshold) + ", " + (r.in_regime ? "in regime" : "OUT OF REGIME");
}

struct Range {
    double lo = INFINITY;
    double hi = -INFINITY;
    void add(double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    std::string text(std::size_t rows) const {
        if (rows == 1) return fixed6(lo);
        return "[" + fixed6(lo) + ", " + fixed6(hi) + "]";
    }
};

void echo_system(std::ostringstream& s, const ScenarioConfig& c) {
    s << "g = " << format_double(c.g) << "\n";
    s << "kappa = " << format_double(c.kappa) << "\n";
    s << "gamma = " << format_double(c.gamma) << "\n";
    s << "n_max = " << c.n_max << "\n";
    s << "regime_threshold = " << format_double(c.regime_threshold) << "\n";
    s << "model = " << (c.model == EvolutionModel::full ? "full" : "effective") << "\n";
}

RunOutput run_prepare_pair(const ScenarioConfig& c, std::ostringstream& s, WarningLog& log) {
    RunOutput out;
    out.table.header = {"omega_minus", "T", "p0", "fidelity", "alpha_re", "alpha_im"};
    echo_system(s, c);
    s << "omega_minus = " << grid_text(c.omega_minus) << "\n";
    s << "T = " << (c.t_auto ? std::string("auto (pi/|omega_minus|)") : grid_text(c.durations)) << "\n";
    Range p0;
    Range fid;
    for (double w : c.omega_minus) {
        const SystemSpec spec = pair_spec(c.g, c.kappa, c.gamma, w, c.n_max);
        const RegimeReport regime = check_regime(spec, std::abs(w), c.regime_threshold);
        s << "regime at omega_minus = " << format_double(w) << ": " << regime_line(regime) << "\n";
        for (double t : c.pair_durations(w)) {
            const RunRecord r = prepare_pair(spec, w, t, c.model, c.regime_threshold);
            log.add(r.warnings);
            out.table.rows.push_back({format_double(w), format_double(t), format_double(r.p0),
                                      format_double(r.fidelity), format_double(r.alpha.real()),
                                      format_double(r.alpha.imag())});
            p0.add(r.p0);
            fid.add(r.fidelity);
        }
    }
    const std::size_t n = out.table.rows.size();
    s << "p0 = " << p0.text(n) << "\n";
    s << "fidelity = " << fid.text(n) << "\n";
    if (n == 1) s << "expected attempts = " << fixed6(1.0 / p0.lo) << "\n";
    return out;
}

StateVector qubit_input(const std::string& label) {
    return basis_state(qubit_layout(2), {static_cast<std::size_t>(label[0] - '0'),
                                         static_cast<std::size_t>(label[1] - '0')});
}

RunOutput run_cnot(const ScenarioConfig& c, std::ostringstream& s, WarningLog& log) {
    RunOutput out;
    out.table.header = {"omega", "input_label", "p0", "fidelity"};
    echo_system(s, c);
    s << "omega = " << grid_text(c.omega) << "\n";
    s << "T = auto (sqrt(2) pi/|omega|)\n";
    s << "inputs = " << join(c.inputs) << "\n";
    Range p0;
    Range fid;
    for (double w : c.omega) {
        const SystemSpec spec = lambda_spec(c.g, c.kappa, c.gamma, w, c.n_max);
        bool first = true;
        for (const auto& label : c.inputs) {
            const RunRecord r = cnot_pulse(spec, w, qubit_input(label), c.model, c.regime_threshold);
            if (first) {
                s << "regime at omega = " << format_double(w) << ": " << regime_line(r.regime) << "\n";
                first = false;
            }
            log.add(r.warnings);
            out.table.rows.push_back({format_double(w), label, format_double(r.p0), format_double(r.fidelity)});
            p0.add(r.p0);
            fid.add(r.fidelity);
        }
        if (c.omega.size() == 1) {
            const double pf = process_fidelity(cnot_process(spec, w, c.model), cnot_ideal().entries());
            s << "process fidelity = " << fixed6(pf) << "\n";
        }
    }
    const std::size_t n = out.table.rows.size();
    s << "p0 = " << p0.text(n) << "\n";
    s << "fidelity = " << fid.text(n) << "\n";
    return out;
}

RunOutput run_pbg(const ScenarioConfig& c, std::ostringstream& s) {
    RunOutput out;
    out.table.header = {"g_t1", "g_t2", "bell_fidelity"};
    s << "g = " << format_double(c.g) << "\n";
    s << "g_t1 = " << grid_text(c.g_t1) << "\n";
    s << "g_t2 = " << grid_text(c.g_t2) << "\n";
    double best = -1.0;
    double best_1 = 0.0;
    double best_2 = 0.0;
    for (double a : c.g_t1) {
        for (double b : c.g_t2) {
            const TransitPlan plan{.g = c.g, .t1 = a / c.g, .t2 = b / c.g};
            const double f = pbg_bell_fidelity(plan);
            out.table.rows.push_back({format_double(a), format_double(b), format_double(f)});
            if (f > best + 1e-12) {
                best = f;
                best_1 = a;
                best_2 = b;
            }
        }
    }
    const TransitPlan plan{.g = c.g, .t1 = best_1 / c.g, .t2 = best_2 / c.g};
    const double simulated = fidelity(pbg_simulated_state(plan), pbg_bell_target());
    s << "bell fidelity max = " << fixed6(best) << " at g_t1 = " << format_double(best_1)
      << ", g_t2 = " << format_double(best_2) << "\n";
    s << "sequential simulation fidelity there = " << fixed6(simulated)
      << " (relative sign of the |g e 0> term differs)\n";
    return out;
}

RunOutput run_bell(const ScenarioConfig& c, std::ostringstream& s) {
    RunOutput out;
    out.table.header = {"omega_T", "vartheta", "b_s", "violated"};
    s << "omega_T = " << grid_text(c.omega_t) << "\n";
    s << "vartheta = " << grid_text(c.vartheta) << "\n";
    const auto rows = bs_landscape(c.omega_t, c.vartheta);
    const LandscapeRow* best = nullptr;
    std::size_t violated = 0;
    for (const auto& r : rows) {
        out.table.rows.push_back({format_double(r.omega_t), format_double(r.vartheta),
                                  format_double(r.b_s), bool_text(r.violated)});
        if (!best || r.b_s > best->b_s + 1e-12) best = &r;
        violated += r.violated ? 1 : 0;
    }
    s << "B_S max = " << fixed6(best->b_s) << " at omega_T = " << format_double(best->omega_t)
      << ", vartheta = " << format_double(best->vartheta) << "\n";
    s << "violating grid points = " << violated << " of " << rows.size() << "\n";
    if (c.shots > 0) {
        const StateVector pair = entangled_pair_qubits(
            Complex(0.0, -std::sin(best->omega_t / 2.0)));
        const AnalyzerSettings a = AnalyzerSettings::chain(best->vartheta);
        const double t1[4] = {a.theta1, a.theta1, a.theta1p, a.theta1p};
        const double t2[4] = {a.theta2, a.theta2p, a.theta2, a.theta2p};
        const double sign[4] = {1.0, -1.0, 1.0, 1.0};
        double value = 0.0;
        double var = 0.0;
        for (int k = 0; k < 4; ++k) {
            const auto e = sample_correlation(pair, 0, 1, t1[k], t2[k], c.shots,
                                              c.seed + static_cast<std::uint64_t>(k) * 1000003u,
                                              c.readout_error);
            value += sign[k] * e.estimate;
            var += e.standard_error * e.standard_error;
        }
        s << "sampled |B_S| at max = " << fixed6(std::abs(value)) << " +- " << fixed6(std::sqrt(var))
          << " (" << c.shots << " shots per setting, seed " << c.seed << ", readout_error "
          << format_double(c.readout_error) << ")\n";
    }
    return out;
}

RunOutput run_mermin(const ScenarioConfig& c, std::ostringstream& s) {
    RunOutput out;
    out.table.header = {"n_qubits", "state", "F", "classical_bound", "quantum_bound", "violated"};
    s << "n_qubits = " << c.n_qubits << "\n";
    s << "state = " << c.state << "\n";
    const StateVector psi = c.state == "ghz"
                                ? ghz_state(c.n_qubits)
                                : basis_state(qubit_layout(c.n_qubits),
                                              std::vector<std::size_t>(c.n_qubits, 0));
    const MerminResult m = mermin_n(psi);
    out.table.rows.push_back({std::to_string(c.n_qubits), c.state, format_double(m.value),
                              format_double(m.classical_bound), format_double(m.quantum_bound),
                              bool_text(m.violated)});
    s << "F = " << fixed6(m.value) << "\n";
    s << "classical bound = " << format_double(m.classical_bound) << ", quantum bound = "
      << format_double(m.quantum_bound) << ", violated = " << bool_text(m.violated) << "\n";
    return out;
}

RunOutput run_trajectories_scenario(const ScenarioConfig& c, unsigned threads,
                                    std::ostringstream& s, WarningLog& log) {
    RunOutput out;
    out.table.header = {"t_end", "p0_det", "p0_mc", "stderr"};
    const bool pair = c.process == TrajectoryProcess::pair;
    s << "process = " << (pair ? "pair" : "cavity_decay") << "\n";
    echo_system(s, c);
    if (pair) s << "omega_minus = " << format_double(c.omega_minus.front()) << "\n";
    s << "t_end = " << grid_text(c.t_end) << "\n";
    s << "n_traj = " << c.n_traj << "\nseed = " << c.seed << "\n";

    TrajectoryOptions opts;
    opts.threads = threads;
    std::optional<OperatorMatrix> h;
    std::vector<OperatorMatrix> jumps;
    std::optional<StateVector> psi0;
    double rate = 0.0;
    if (pair) {
        const SystemSpec spec = pair_spec(c.g, c.kappa, c.gamma, c.omega_minus.front(), c.n_max);
        const RegimeReport regime = check_regime(spec, std::abs(c.omega_minus.front()), c.regime_threshold);
        s << "regime: " << regime_line(regime) << "\n";
        if (!regime.in_regime) log.add("parameters outside the Zeno regime");
        h = h_cond(spec);
        jumps = jump_operators(spec);
        psi0 = basis_state(spec.layout(), {0, 0, 0});
        rate = std::max({c.kappa, c.gamma, c.g});
    } else {
        // A single leaky mode starting with one photon.
        const HilbertLayout layout = compose({{kCavityLabel, c.n_max + 1}});
        const Matrix b = ladder(c.n_max + 1);
        h = OperatorMatrix(layout, Complex(0.0, -c.kappa) * (b.adjoint() * b));
        if (c.kappa > 0.0) jumps.push_back(OperatorMatrix(layout, std::sqrt(2.0 * c.kappa) * b));
        psi0 = basis_state(layout, {1});
        rate = std::max(c.kappa, 1e-300);
    }
    const double limit = 0.01 / std::max(rate, 1e-300);
    opts.dt = c.dt > 0.0 ? c.dt : limit;
    if (opts.dt > limit * (1.0 + 1e-12)) {
        throw InvalidInput("dt exceeds 0.01 / (largest rate)");
    }
    s << "dt = " << format_double(opts.dt) << "\n";
    double worst_sigma = 0.0;
    for (double t : c.t_end) {
        const double det = no_photon_probability(*h, *psi0, t);
        const TrajectoryBatch batch = run_trajectories(*h, jumps, *psi0, t, c.n_traj, c.seed, opts);
        out.table.rows.push_back({format_double(t), format_double(det), format_double(batch.p0_estimate),
                                  format_double(batch.p0_stderr)});
        if (batch.p0_stderr > 0.0) {
            worst_sigma = std::max(worst_sigma, std::abs(batch.p0_estimate - det) / batch.p0_stderr);
        } else if (batch.p0_estimate != det) {
            worst_sigma = std::max(worst_sigma, std::abs(batch.p0_estimate - det) > 1e-9 ? INFINITY : 0.0);
        }
    }
    s << "max |p0_mc - p0_det| / stderr = " << fixed6(worst_sigma) << "\n";
    return out;
}

}  // namespace

std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    // snprintf follows LC_NUMERIC; force '.'.
    for (char* p = buf; *p; ++p) {
        if (*p == ',') *p = '.';
    }
    return buf;
}

std::string Table::to_csv() const {
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            out += cells[k];
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

RunOutput run_scenario(const ScenarioConfig& c, unsigned threads) {
    std::ostringstream s;
    WarningLog log;
    s << "scenario = " << to_string(c.scenario) << "\n";
    RunOutput out;
    switch (c.scenario) {
        case Scenario::prepare_pair: out = run_prepare_pair(c, s, log); break;
        case Scenario::cnot: out = run_cnot(c, s, log); break;
        case Scenario::pbg: out = run_pbg(c, s); break;
        case Scenario::bell_landscape: out = run_bell(c, s); break;
        case Scenario::mermin: out = run_mermin(c, s); break;
        case Scenario::trajectories: out = run_trajectories_scenario(c, threads, s, log); break;
    }
    out.warnings = log.lines();
    for (const auto& w : out.warnings) s << "warning: " << w << "\n";
    s << "rows = " << out.table.rows.size() << "\n";
    out.summary = s.str();
    out.csv_name = c.prefix + std::string(to_string(c.scenario)) + ".csv";
    return out;
}

void write_output(const RunOutput& output, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
    const auto write = [&](const std::string& name, const std::string& text) {
        const fs::path path = fs::path(dir) / name;
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
        f << text;
        f.close();
        if (!f) throw IoError("failed writing '" + path.string() + "'");
    };
    write(output.csv_name, output.table.to_csv());
    const std::string stem = output.csv_name.substr(0, output.csv_name.size() - 4);
    write(stem + "_summary.txt", output.summary);
}

std::vector<ScenarioConfig> figure_configs(std::string_view name) {
    const std::vector<double> omegas = logspace(0.005, 0.5, 25);
    std::vector<ScenarioConfig> out;
    if (name == "fig2" || name == "fig4" || name == "fig5") {
        for (double gamma : {0.0, 0.01, 0.1}) {
            ScenarioConfig c;
            c.g = 1.0;
            c.kappa = 1.0;
            c.gamma = gamma;
            if (name == "fig2") {
                c.scenario = Scenario::prepare_pair;
                c.omega_minus = omegas;
            } else {
                c.scenario = Scenario::cnot;
                c.omega = omegas;
            }
            c.prefix = std::string(name) + "_gamma" + format_double(gamma) + "_";
            out.push_back(std::move(c));
        }
        return out;
    }
    if (name == "islands") {
        ScenarioConfig c;
        c.scenario = Scenario::bell_landscape;
        c.omega_t = linspace(0.0, 2.0 * pi, 101);
        c.vartheta = linspace(0.0, pi, 101);
        c.prefix = "islands_";
        out.push_back(std::move(c));
        return out;
    }
    throw InvalidInput("unknown figure '" + std::string(name) + "' (expected fig2, fig4, fig5 or islands)");
}

}  // namespace atomq::app
