#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "atomq/qstate.hpp"

namespace atomq {

/// Level conventions.
///
/// Two-level atoms have local indices 0 (ground) and 1 (excited). The
/// excited level is the one written "2" in the two-level conditional
/// Hamiltonian; qubit label 1 therefore means "excited" for these atoms.
/// The only transition label is "0-1".
///
/// Lambda atoms have local indices 0, 1 (stable ground states) and 2
/// (excited). The cavity drives 1-2; lasers may drive "0-2" and "1-2".
namespace level {
inline constexpr std::size_t ground = 0;
inline constexpr std::size_t two_level_excited = 1;
inline constexpr std::size_t lambda_excited = 2;
}  // namespace level

struct RabiKey {
    std::size_t atom = 0;  // zero-based
    std::string transition;

    auto operator<=>(const RabiKey&) const = default;
};

/// Declarative description of atoms inside a single-mode cavity.
/// Units: hbar = 1, every rate in the same units as g.
struct SystemSpec {
    std::vector<std::size_t> atom_levels;  // 2 or 3 per atom
    double g = 1.0;
    double kappa = 0.0;
    double gamma = 0.0;
    std::map<RabiKey, Complex> rabi;
    std::size_t n_max = 2;  // highest Fock number kept

    std::size_t n_atoms() const noexcept { return atom_levels.size(); }

    /// Throws InvalidInput when an invariant is broken.
    void validate() const;

    /// atom1 (x) atom2 (x) ... (x) cav, cavity dimension n_max + 1.
    HilbertLayout layout() const;
};

std::string atom_label(std::size_t atom);
inline constexpr const char* kCavityLabel = "cav";

/// Two two-level atoms driven with Omega1 = -Omega2 = omega_minus / sqrt(2),
/// so that (Omega1 - Omega2) / sqrt(2) == omega_minus.
SystemSpec pair_spec(double g, double kappa, double gamma, Complex omega_minus,
                     std::size_t n_max = 2);

/// Two lambda atoms for the CNOT pulse: atom 1 driven on 1-2 and atom 2 on
/// 0-2, both with Rabi frequency sqrt(2) * omega.
SystemSpec lambda_spec(double g, double kappa, double gamma, double omega,
                       std::size_t n_max = 2);

/// General conditional Hamiltonian for any mix of two- and three-level atoms:
///   i g sum_i (b |e><c|_i - h.c.) + 1/2 sum (Omega |e><l| + h.c.)
///   - i Gamma sum_i |e><e|_i - i kappa b^dagger b
/// where c is the cavity-coupled lower level and l the laser's lower level.
OperatorMatrix h_cond(const SystemSpec& spec);

/// Two atoms with two levels each; throws when the spec has another shape.
OperatorMatrix h_cond_two_level(const SystemSpec& spec);

/// Two lambda atoms with rabi entries (atom 0, "1-2") and (atom 1, "0-2").
OperatorMatrix h_cond_lambda(const SystemSpec& spec);

/// The spec's h_cond with lasers and spontaneous emission switched off.
OperatorMatrix interaction_hamiltonian(const SystemSpec& spec);

/// sqrt(2 kappa) b. The norm of a no-jump state decays at
/// 2 kappa <b^dagger b> + 2 Gamma <P_e>, so jump operators carry the factor 2.
OperatorMatrix cavity_jump_operator(const SystemSpec& spec);

/// Cavity leakage plus sqrt(2 Gamma) |c><e| per atom; zero-rate channels
/// are omitted.
std::vector<OperatorMatrix> jump_operators(const SystemSpec& spec);

/// exp(-i H t).
Matrix propagator(const OperatorMatrix& h, double t);

/// exp(-i H t) psi0, left unnormalized. psi0 must be normalized.
StateVector evolve_no_jump(const OperatorMatrix& h, const StateVector& psi0, double t);

/// || exp(-i H t) psi0 ||^2.
double no_photon_probability(const OperatorMatrix& h, const StateVector& psi0, double t);

struct RegimeReport {
    double gamma_over_omega = 0.0;
    double omega_kappa_over_g2 = 0.0;
    double omega_over_kappa = 0.0;
    double threshold = 0.1;
    bool in_regime = false;

    /// threshold - ratio for each ratio, in the order above.
    std::array<double, 3> margins() const;
};

/// Checks Gamma << |Omega| << g^2/kappa and kappa.
RegimeReport check_regime(const SystemSpec& spec, double omega_eff, double threshold = 0.1);

}  // namespace atomq
