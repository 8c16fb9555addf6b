#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "atomq/qstate.hpp"

namespace atomq {

/// Analyzer angles of the two parties; primed angles are the alternates.
struct AnalyzerSettings {
    double theta1 = 0.0;
    double theta1p = 0.0;
    double theta2 = 0.0;
    double theta2p = 0.0;

    /// theta1 - theta2 = theta2 - theta1' = theta1' - theta2' = vartheta,
    /// anchored at theta2 = 0.
    static AnalyzerSettings chain(double vartheta);
};

struct BellResult {
    // E(t1,t2), E(t1,t2'), E(t1',t2), E(t1',t2')
    std::array<double, 4> correlations{};
    double b_s = 0.0;  // signed combination; the inequality bounds |b_s|
    bool violated = false;

    double magnitude() const { return std::abs(b_s); }
};

/// cos(theta) sigma_x + sin(theta) sigma_y.
Matrix sigma_theta(double theta);

inline constexpr double kBellClassicalBound = 2.0;

/// <sigma_theta_i (x) sigma_theta_j> on factors i and j (both qubits).
/// The state must be normalized; an imaginary part above 1e-12 is an error.
double correlation(const StateVector& state, std::size_t i, std::size_t j, double theta_i,
                   double theta_j);

/// E(t1,t2) - E(t1,t2') + E(t1',t2) + E(t1',t2') on qubits (i, j).
BellResult bs_value(const StateVector& state, const AnalyzerSettings& settings, std::size_t i = 0,
                    std::size_t j = 1);

/// |3 E(vartheta, 0) - E(3 vartheta, 0)|. Throws InvalidInput unless the
/// state's correlation depends only on the angle difference (checked on 20
/// fixed pseudo-random angle pairs to 1e-10).
double bs_reduced(const StateVector& state, double vartheta, std::size_t i = 0, std::size_t j = 1);

struct LandscapeRow {
    double omega_t = 0.0;
    double vartheta = 0.0;
    double b_s = 0.0;  // |B_S|
    bool violated = false;
};

/// |B_S| of the prepared pair state as a function of pulse area and analyzer
/// angle: |alpha|^2 = sin^2(omega_t / 2) and E(x, 0) = -|alpha|^2 cos x.
/// Rows run over omega_t (outer) and vartheta (inner).
std::vector<LandscapeRow> bs_landscape(std::span<const double> omega_t_grid,
                                       std::span<const double> vartheta_grid);

/// alpha |a> + sqrt(1 - |alpha|^2) |00> on two qubits, |a> = (|10> - |01>)/sqrt(2).
StateVector entangled_pair_qubits(Complex alpha);

/// (|0...0> + |1...1>)/sqrt(2).
StateVector ghz_state(std::size_t n);

/// Expectation of a Pauli string such as "XYY" (characters I, X, Y, Z, one
/// per factor; every factor must be a qubit).
Complex pauli_expectation(const StateVector& state, std::string_view paulis);

/// |<XXX> - <YYX> - <YXY> - <XYY>| on exactly three qubits.
double mermin_value(const StateVector& state);

struct MerminResult {
    double value = 0.0;           // |<M_N>|
    double classical_bound = 0.0; // 2^floor(N/2)
    double quantum_bound = 0.0;   // 2^(N-1)
    bool violated = false;
};

/// M_N = Re[(sigma_x + i sigma_y)^{(x) N}], written as a Hermitian matrix.
/// For N = 3 this is XXX - XYY - YXY - YYX, the three-qubit combination
/// with no extra normalization.
Matrix mermin_operator(std::size_t n);

MerminResult mermin_n(const StateVector& state);

struct SampleEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Finite-shot estimate of the correlation from projective sigma_theta
/// readout with independent bit-flip error per qubit.
///
/// Each shot rotates qubit k into the sigma_theta eigenbasis
/// |+-theta> = (|0> +- e^{i theta}|1>)/sqrt(2), samples the joint outcome
/// and flips each outcome with probability readout_error. Shots are drawn in
/// blocks of kShotBlock; block b uses an mt19937_64 seeded with seed + b.
SampleEstimate sample_correlation(const StateVector& state, std::size_t i, std::size_t j,
                                  double theta_i, double theta_j, std::uint64_t shots,
                                  std::uint64_t seed, double readout_error = 0.0);

inline constexpr std::uint64_t kShotBlock = 4096;

}  // namespace atomq
