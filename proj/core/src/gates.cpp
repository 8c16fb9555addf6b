#include "atomq/gates.hpp"

#include <cmath>
#include <numbers>

namespace atomq {

namespace {

SystemSpec rebuild_pair(const SystemSpec& spec, Complex omega_minus) {
    return pair_spec(spec.g, spec.kappa, spec.gamma, omega_minus, spec.n_max);
}

SystemSpec rebuild_lambda(const SystemSpec& spec, double omega) {
    return lambda_spec(spec.g, spec.kappa, spec.gamma, omega, spec.n_max);
}

void add_timing_warnings(RunRecord& rec, const SystemSpec& spec) {
    if (!rec.regime.in_regime) {
        rec.warnings.push_back("parameters outside the strong-coupling regime (Gamma/|Omega|=" +
                               std::to_string(rec.regime.gamma_over_omega) +
                               ", |Omega|kappa/g^2=" +
                               std::to_string(rec.regime.omega_kappa_over_g2) +
                               ", |Omega|/kappa=" + std::to_string(rec.regime.omega_over_kappa) +
                               ")");
    }
    if (spec.kappa > 0.0) {
        const double zeno = zeno_timescale(spec);
        if (rec.duration < 10.0 * zeno) {
            rec.warnings.push_back("pulse duration " + std::to_string(rec.duration) +
                                   " is shorter than ten Zeno times (" +
                                   std::to_string(10.0 * zeno) + ")");
        }
    }
}

constexpr std::size_t kQubitIndices[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

}  // namespace

Complex predicted_alpha(Complex omega_minus, double duration) {
    const double w = std::abs(omega_minus);
    if (w == 0.0) return {};
    return -kI * (omega_minus / w) * std::sin(w * duration / 2.0);
}

StateVector pair_target(const SystemSpec& spec, Complex omega_minus, double duration) {
    const SystemSpec s = rebuild_pair(spec, omega_minus);
    const HilbertLayout layout = s.layout();
    const Complex alpha = predicted_alpha(omega_minus, duration);
    const double ground = std::cos(std::abs(omega_minus) * duration / 2.0);
    Vector v = alpha * two_level_antisymmetric_state(s).amplitudes();
    v(static_cast<Eigen::Index>(layout.index({0, 0, 0}))) += ground;
    return {layout, std::move(v)};
}

RunRecord prepare_pair(const SystemSpec& spec, Complex omega_minus, double duration,
                       EvolutionModel model, double regime_threshold) {
    if (!std::isfinite(duration) || duration < 0.0) throw InvalidInput("pulse length must be >= 0");
    if (std::abs(omega_minus) == 0.0) throw InvalidInput("omega_minus must be non-zero");

    const SystemSpec s = rebuild_pair(spec, omega_minus);
    OperatorMatrix h = h_cond_two_level(s);
    if (model == EvolutionModel::effective) h = effective_hamiltonian(h, two_level_dfs_basis(s)).full;

    const HilbertLayout layout = s.layout();
    StateVector psi = evolve_no_jump(h, basis_state(layout, {0, 0, 0}), duration);
    const double p0 = psi.norm_squared();
    if (!(p0 > 0.0)) throw NumericError("conditional state vanished during pair preparation");

    RunRecord rec{.final_state = psi,
                  .p0 = p0,
                  .fidelity = fidelity(psi, pair_target(s, omega_minus, duration)),
                  .alpha = inner(two_level_antisymmetric_state(s), psi) / std::sqrt(p0),
                  .duration = duration,
                  .regime = check_regime(s, std::abs(omega_minus), regime_threshold),
                  .warnings = {}};
    add_timing_warnings(rec, s);
    return rec;
}

OperatorMatrix sqr(double xi, double phi) {
    const Complex e = std::exp(kI * phi);
    Matrix u(2, 2);
    u << std::cos(xi), -kI * std::sin(xi) * e, -kI * std::sin(xi) * std::conj(e), std::cos(xi);
    return {qubit_layout(1), std::move(u)};
}

OperatorMatrix cnot_ideal() {
    Matrix u = Matrix::Zero(4, 4);
    u(0, 0) = 1.0;
    u(1, 1) = 1.0;
    u(2, 3) = 1.0;
    u(3, 2) = 1.0;
    return {qubit_layout(2), std::move(u), true};
}

double cnot_duration(double omega) {
    if (omega == 0.0 || !std::isfinite(omega)) throw InvalidInput("CNOT Rabi frequency must be non-zero");
    return std::numbers::sqrt2 * std::numbers::pi / std::abs(omega);
}

StateVector embed_qubits(const SystemSpec& spec, const StateVector& qubits) {
    const auto& f = qubits.layout().factors();
    if (f.size() != 2 || f[0].dim != 2 || f[1].dim != 2) {
        throw InvalidInput("expected a two-qubit state");
    }
    if (spec.atom_levels != std::vector<std::size_t>{3, 3}) {
        throw InvalidInput("qubit embedding needs two lambda atoms");
    }
    const HilbertLayout layout = spec.layout();
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    for (std::size_t k = 0; k < 4; ++k) {
        const auto* q = kQubitIndices[k];
        v(static_cast<Eigen::Index>(layout.index({q[0], q[1], 0}))) = qubits[k];
    }
    return {layout, std::move(v)};
}

StateVector extract_qubits(const StateVector& psi) {
    const auto& f = psi.layout().factors();
    if (f.size() != 3 || f[0].dim < 2 || f[1].dim < 2) {
        throw InvalidInput("expected atom (x) atom (x) cavity state");
    }
    Vector v(4);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto* q = kQubitIndices[k];
        v(static_cast<Eigen::Index>(k)) = psi[psi.layout().index({q[0], q[1], 0})];
    }
    return {qubit_layout(2), std::move(v)};
}

RunRecord cnot_pulse(const SystemSpec& spec, double omega, const StateVector& input,
                     EvolutionModel model, double regime_threshold) {
    const double duration = cnot_duration(omega);
    const SystemSpec s = rebuild_lambda(spec, omega);
    OperatorMatrix h = h_cond_lambda(s);
    if (model == EvolutionModel::effective) h = effective_hamiltonian(h, lambda_dfs_basis(s)).full;

    const StateVector psi0 = embed_qubits(s, input);
    StateVector psi = evolve_no_jump(h, psi0, duration);
    const double p0 = psi.norm_squared();
    if (!(p0 > 0.0)) throw NumericError("conditional state vanished during CNOT pulse");

    const StateVector target = embed_qubits(s, cnot_ideal().apply(input));
    RunRecord rec{.final_state = psi,
                  .p0 = p0,
                  .fidelity = fidelity(psi, target),
                  .alpha = {},
                  .duration = duration,
                  .regime = check_regime(s, omega, regime_threshold),
                  .warnings = {}};
    add_timing_warnings(rec, s);
    return rec;
}

Matrix cnot_process(const SystemSpec& spec, double omega, EvolutionModel model) {
    const SystemSpec s = rebuild_lambda(spec, omega);
    OperatorMatrix h = h_cond_lambda(s);
    if (model == EvolutionModel::effective) h = effective_hamiltonian(h, lambda_dfs_basis(s)).full;
    const Matrix u = propagator(h, cnot_duration(omega));
    const HilbertLayout layout = s.layout();
    Matrix m(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t l = 0; l < 4; ++l) {
            const auto row = layout.index({kQubitIndices[k][0], kQubitIndices[k][1], 0});
            const auto col = layout.index({kQubitIndices[l][0], kQubitIndices[l][1], 0});
            m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
                u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
        }
    }
    return m;
}

double process_fidelity(const Matrix& process, const Matrix& ideal) {
    if (process.rows() != ideal.rows() || process.cols() != ideal.cols()) {
        throw InvalidInput("process matrices differ in shape");
    }
    const double d = static_cast<double>(ideal.rows());
    return std::norm((ideal.adjoint() * process).trace()) / (d * d);
}

}  // namespace atomq
