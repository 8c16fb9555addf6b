#include "atomq/verify/invariants.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "atomq/bell.hpp"
#include "atomq/dfs.hpp"
#include "atomq/dynamics.hpp"
#include "atomq/gates.hpp"
#include "atomq/pbg.hpp"
#include "atomq/trajectories.hpp"
#include "atomq/verify/oracles.hpp"

namespace atomq::verify {

namespace {

using std::numbers::pi;

CheckResult make(bool ok, const std::string& detail) { return {"", ok, detail, 0.0}; }

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

/// Random two-level or lambda spec with rates spread over a few decades.
SystemSpec random_spec(std::mt19937_64& rng, bool lambda) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double kappa = std::pow(10.0, -1.0 + u(rng));
    const double gamma = 0.05 * u(rng);
    const double omega = 0.01 + 0.2 * u(rng);
    return lambda ? lambda_spec(1.0, kappa, gamma, omega) : pair_spec(1.0, kappa, gamma, omega);
}

StateVector initial_state(const SystemSpec& spec, bool lambda) {
    const HilbertLayout layout = spec.layout();
    return lambda ? basis_state(layout, {1, 0, 0}) : basis_state(layout, {0, 0, 0});
}

CheckResult norm_monotonicity(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed);
    double worst = -INFINITY;
    for (std::size_t k = 0; k < o.random_specs; ++k) {
        const bool lambda = (k % 2) == 1;
        const SystemSpec spec = random_spec(rng, lambda);
        const OperatorMatrix h = h_cond(spec);
        const StateVector psi0 = initial_state(spec, lambda);
        const Matrix step = propagator(h, 2.5);
        Vector psi = psi0.amplitudes();
        double prev = psi.norm();
        for (int s = 0; s < 80; ++s) {
            psi = step * psi;
            const double now = psi.norm();
            worst = std::max(worst, now - prev);
            prev = now;
        }
    }
    return make(worst <= 1e-10, "max norm increase per step " + fmt_double(worst));
}

CheckResult p0_range(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 1);
    bool ok = true;
    double p0_at_zero_err = 0.0;
    double max_p0 = 0.0;
    for (std::size_t k = 0; k < o.random_specs; ++k) {
        const bool lambda = (k % 2) == 1;
        const SystemSpec spec = random_spec(rng, lambda);
        const OperatorMatrix h = h_cond(spec);
        const StateVector psi0 = initial_state(spec, lambda);
        p0_at_zero_err = std::max(p0_at_zero_err, std::abs(no_photon_probability(h, psi0, 0.0) - 1.0));
        for (double t : {1.0, 10.0, 100.0, 400.0}) {
            const double p = no_photon_probability(h, psi0, t);
            max_p0 = std::max(max_p0, p);
            ok = ok && p >= 0.0 && p <= 1.0 + 1e-12;
        }
    }
    ok = ok && p0_at_zero_err == 0.0;
    return make(ok, "|P0(0)-1|=" + fmt_double(p0_at_zero_err) + ", max P0(t>0)=" + fmt_double(max_p0));
}

CheckResult hermitian_conservation(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 2);
    double worst = 0.0;
    for (std::size_t k = 0; k < o.random_specs; ++k) {
        const bool lambda = (k % 2) == 1;
        SystemSpec spec = random_spec(rng, lambda);
        spec.kappa = 0.0;
        spec.gamma = 0.0;
        const OperatorMatrix h = h_cond(spec);
        const StateVector psi0 = initial_state(spec, lambda);
        for (double t : {1.0, 37.0, 100.0}) {
            worst = std::max(worst, std::abs(evolve_no_jump(h, psi0, t).norm_squared() - 1.0));
        }
    }
    return make(worst <= 1e-12, "max |norm^2 - 1| " + fmt_double(worst));
}

CheckResult exponential_vs_integrator(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 3);
    double worst = 0.0;
    for (std::size_t k = 0; k < o.random_specs; ++k) {
        const bool lambda = (k % 2) == 1;
        const SystemSpec spec = random_spec(rng, lambda);
        const OperatorMatrix h = h_cond(spec);
        const StateVector psi0 = initial_state(spec, lambda);
        const double t = 5.0 + 20.0 * static_cast<double>(k);
        const Vector a = evolve_no_jump(h, psi0, t).amplitudes();
        const Vector b = rk_step_halving(h.entries(), psi0.amplitudes(), t, 1e-13);
        worst = std::max(worst, (a - b).norm() / b.norm());
    }
    return make(worst <= 1e-8, "max relative deviation " + fmt_double(worst));
}

CheckResult tsirelson(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 4);
    std::uniform_real_distribution<double> angle(-pi, pi);
    const HilbertLayout layout = qubit_layout(2);
    double best = 0.0;
    for (std::size_t k = 0; k < o.tsirelson_samples; ++k) {
        const StateVector psi = random_state(layout, rng);
        const AnalyzerSettings s{angle(rng), angle(rng), angle(rng), angle(rng)};
        best = std::max(best, bs_value(psi, s).magnitude());
    }
    return make(best <= 2.0 * std::numbers::sqrt2 + 1e-9, "max |B_S| " + std::to_string(best));
}

CheckResult lhv_bounds(const SuiteOptions&) {
    const double chsh = lhv_max_chsh();
    const double mermin = lhv_max_mermin(3);
    return make(chsh == 2.0 && mermin == 2.0,
                "CHSH " + std::to_string(chsh) + ", Mermin(3) " + std::to_string(mermin));
}

CheckResult fock_convergence(const SuiteOptions&) {
    double worst = 0.0;
    for (double omega : {0.01, 0.02}) {
        for (double gamma : {0.0, 0.001}) {
            const auto a = prepare_pair(pair_spec(1.0, 1.0, gamma, omega, 2), omega, pi / omega);
            const auto b = prepare_pair(pair_spec(1.0, 1.0, gamma, omega, 3), omega, pi / omega);
            worst = std::max(worst, std::abs(a.p0 - b.p0));
            const StateVector in = basis_state(qubit_layout(2), {1, 0});
            const auto c = cnot_pulse(lambda_spec(1.0, 1.0, gamma, omega, 2), omega, in);
            const auto d = cnot_pulse(lambda_spec(1.0, 1.0, gamma, omega, 3), omega, in);
            worst = std::max(worst, std::abs(c.p0 - d.p0));
        }
    }
    return make(worst < 1e-6, "max |P0(n_max=3) - P0(n_max=2)| " + fmt_double(worst));
}

CheckResult dfs_stationarity(const SuiteOptions&) {
    double worst_jump = 0.0;
    double worst_norm = 0.0;
    for (bool lambda : {false, true}) {
        SystemSpec spec = lambda ? lambda_spec(1.0, 1.0, 0.0, 0.0) : pair_spec(1.0, 1.0, 0.0, 0.0);
        const OperatorMatrix bare = interaction_hamiltonian(spec);
        const OperatorMatrix cavity = cavity_jump_operator(spec);
        const SubspaceBasis dfs = find_dfs(bare, {cavity});
        for (const auto& v : dfs.vectors()) {
            worst_jump = std::max(worst_jump, cavity.apply(v).amplitudes().norm());
            worst_norm = std::max(worst_norm, std::abs(evolve_no_jump(bare, v, 50.0).amplitudes().norm() - 1.0));
        }
    }
    return make(worst_jump <= 1e-12 && worst_norm <= 1e-10,
                "max ||L v|| " + fmt_double(worst_jump) + ", max | ||psi(50)|| - 1 | " + fmt_double(worst_norm));
}

CheckResult correlation_bound(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 5);
    std::uniform_real_distribution<double> angle(-pi, pi);
    double worst = 0.0;
    for (std::size_t n : {2u, 3u}) {
        const HilbertLayout layout = qubit_layout(n);
        for (int k = 0; k < 200; ++k) {
            const StateVector psi = random_state(layout, rng);
            worst = std::max(worst, std::abs(correlation(psi, 0, n - 1, angle(rng), angle(rng))));
        }
    }
    return make(worst <= 1.0 + 1e-12, "max |E| " + std::to_string(worst));
}

CheckResult pbg_normalization(const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 6);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const double t = u(rng);
        const JcAmplitudes c = jc_amplitudes(1.0, t);
        worst = std::max(worst, std::abs(std::norm(c.excited) + std::norm(c.ground) - 1.0));
        const TransitPlan plan{.g = 1.0, .t1 = u(rng), .t2 = u(rng)};
        worst = std::max(worst, std::abs(pbg_final_state(plan).norm_squared() - 1.0));
    }
    return make(worst <= 1e-12, "max norm deviation " + fmt_double(worst));
}

CheckResult trajectory_determinism(const SuiteOptions& o) {
    const SystemSpec spec = pair_spec(1.0, 1.0, 0.01, 0.2);
    const StateVector psi0 = basis_state(spec.layout(), {0, 0, 0});
    const auto a = run_trajectories(spec, psi0, 5.0, 300, o.seed);
    const auto b = run_trajectories(spec, psi0, 5.0, 300, o.seed);
    bool same = a.p0_estimate == b.p0_estimate && a.mean_jumps == b.mean_jumps;
    for (std::size_t k = 0; k < a.jump_time_histogram.size(); ++k) {
        same = same && a.jump_time_histogram[k].count == b.jump_time_histogram[k].count;
    }
    return make(same, "p0 " + std::to_string(a.p0_estimate) + " reproduced");
}

}  // namespace

CheckResult timed_check(const std::string& name, const std::function<CheckResult()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = fn();
    } catch (const std::exception& e) {
        r = {"", false, std::string("exception: ") + e.what(), 0.0};
    }
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CheckResult> run_invariant_suite(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    const auto add = [&](const std::string& name, CheckResult (*fn)(const SuiteOptions&)) {
        out.push_back(timed_check(name, [&] { return fn(o); }));
    };
    add("norm monotonicity", norm_monotonicity);
    add("P0 range", p0_range);
    add("Hermitian norm conservation", hermitian_conservation);
    add("exponential vs step-halving integrator", exponential_vs_integrator);
    add("Tsirelson bound", tsirelson);
    add("local hidden variable bounds", lhv_bounds);
    add("Fock truncation convergence", fock_convergence);
    add("DFS stationarity", dfs_stationarity);
    add("correlation bound", correlation_bound);
    add("PBG normalization", pbg_normalization);
    add("trajectory determinism", trajectory_determinism);
    return out;
}

}  // namespace atomq::verify
