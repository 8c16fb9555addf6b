#pragma once

#include <string>
#include <vector>

#include "atomq/dfs.hpp"
#include "atomq/dynamics.hpp"

namespace atomq {

/// Which generator a protocol evolves under.
enum class EvolutionModel {
    full,       // the complete conditional Hamiltonian
    effective,  // P_DFS H_cond P_DFS with the analytic decoherence-free basis
};

struct RunRecord {
    StateVector final_state;  // unnormalized conditional state
    double p0 = 1.0;          // no-photon probability, == final_state.norm_squared()
    double fidelity = 0.0;    // conditional fidelity against the protocol target
    Complex alpha{};          // pair preparation only: <a|psi> / ||psi||
    double duration = 0.0;
    RegimeReport regime;
    std::vector<std::string> warnings;

    /// Mean number of attempts under repeat-until-no-photon.
    double expected_attempts() const { return p0 > 0.0 ? 1.0 / p0 : INFINITY; }
};

/// alpha = -i (Omega/|Omega|) sin(|Omega| T / 2).
Complex predicted_alpha(Complex omega_minus, double duration);

/// alpha |a> + cos(|Omega| T / 2) |00>, with the cavity empty. For
/// |Omega| T <= pi this is alpha |a> + sqrt(1 - |alpha|^2) |00>.
StateVector pair_target(const SystemSpec& spec, Complex omega_minus, double duration);

/// Drives |00>|0_cav> for a time T with Omega1 = -Omega2 and scores the
/// conditional state. spec supplies g, kappa, gamma and n_max; its rabi
/// entries are replaced from omega_minus. Out-of-regime parameters and
/// pulses shorter than ten Zeno times only add warnings.
RunRecord prepare_pair(const SystemSpec& spec, Complex omega_minus, double duration,
                       EvolutionModel model = EvolutionModel::full, double regime_threshold = 0.1);

/// cos(xi) - i sin(xi) (e^{i phi} |0><1| + h.c.) on a single qubit.
OperatorMatrix sqr(double xi, double phi);

/// Identity on |00>, |01>; swaps |10> and |11>.
OperatorMatrix cnot_ideal();

/// sqrt(2) pi / |Omega|.
double cnot_duration(double omega);

/// Maps a two-qubit state into the lambda-atom space with the cavity empty.
StateVector embed_qubits(const SystemSpec& spec, const StateVector& qubits);

/// <q1 q2, 0_cav| psi> over the four qubit ground states, unnormalized.
StateVector extract_qubits(const StateVector& psi);

/// Runs the CNOT pulse on a normalized two-qubit input; fidelity is scored
/// against cnot_ideal() applied to the input.
RunRecord cnot_pulse(const SystemSpec& spec, double omega, const StateVector& input,
                     EvolutionModel model = EvolutionModel::full, double regime_threshold = 0.1);

/// Restriction of the CNOT pulse propagator to the qubit subspace:
/// entry (k, l) = <k, 0_cav| U(T) |l, 0_cav>.
Matrix cnot_process(const SystemSpec& spec, double omega,
                    EvolutionModel model = EvolutionModel::full);

/// |Tr(U_ideal^dagger M)|^2 / 16.
double process_fidelity(const Matrix& process, const Matrix& ideal);

}  // namespace atomq
