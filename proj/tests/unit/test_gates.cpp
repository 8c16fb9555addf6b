#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "atomq/error.hpp"
#include "atomq/gates.hpp"

using namespace atomq;
using std::numbers::pi;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

StateVector qubits(std::size_t a, std::size_t b) { return basis_state(qubit_layout(2), {a, b}); }

}  // namespace

TEST(PreparePair, ZeroLengthPulse) {
    const SystemSpec s = pair_spec(1.0, 1.0, 0.01, 0.02);
    const RunRecord r = prepare_pair(s, 0.02, 0.0);
    EXPECT_DOUBLE_EQ(r.p0, 1.0);
    EXPECT_EQ(std::abs(r.alpha), 0.0);
    EXPECT_NEAR(std::abs(r.final_state[0]), 1.0, 1e-15);
}

TEST(PreparePair, HalfAreaUnderEffectiveModel) {
    const double om = 0.02;
    const SystemSpec s = pair_spec(1.0, 1.0, 0.0, om);
    const RunRecord r = prepare_pair(s, om, pi / (2.0 * om), EvolutionModel::effective);
    EXPECT_NEAR(std::norm(r.alpha), 0.5, 1e-12);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
    EXPECT_NEAR(r.p0, 1.0, 1e-12);
}

TEST(PreparePair, AlphaFollowsPulseAreaWithoutLoss) {
    const double om = 0.02;
    const SystemSpec s = pair_spec(1.0, 1.0, 0.0, om);
    for (double area : {0.5, 1.5, pi, 4.0, 2.0 * pi}) {
        const RunRecord r = prepare_pair(s, om, area / om);
        EXPECT_LE(std::abs(r.alpha - predicted_alpha(om, area / om)), 0.05) << area;
    }
}

TEST(PreparePair, RecordInvariants) {
    const SystemSpec s = pair_spec(1.0, 1.0, 0.01, 0.05);
    const RunRecord r = prepare_pair(s, 0.05, pi / 0.05);
    EXPECT_NEAR(r.final_state.norm_squared(), r.p0, 1e-10);
    EXPECT_GE(r.p0, 0.0);
    EXPECT_LE(r.p0, 1.0);
    EXPECT_GE(r.fidelity, 0.0);
    EXPECT_LE(r.fidelity, 1.0);
    EXPECT_NEAR(r.expected_attempts(), 1.0 / r.p0, 1e-12);
}

TEST(PreparePair, WarningsAreNonFatal) {
    const SystemSpec s = pair_spec(1.0, 1.0, 0.01, 0.5);
    const RunRecord r = prepare_pair(s, 0.5, 1.0);
    EXPECT_FALSE(r.regime.in_regime);
    EXPECT_GE(r.warnings.size(), 1u);
}

TEST(PreparePair, Errors) {
    const SystemSpec s = pair_spec(1.0, 1.0, 0.0, 0.02);
    EXPECT_THROW(prepare_pair(s, 0.0, 1.0), InvalidInput);
    EXPECT_THROW(prepare_pair(s, 0.02, -1.0), InvalidInput);
}

TEST(PredictedAlpha, Form) {
    EXPECT_LE(std::abs(predicted_alpha(0.02, pi / 0.02) - Complex(0, -1)), 1e-15);
    EXPECT_LE(std::abs(predicted_alpha(Complex(0, 0.02), pi / 0.02) - Complex(1, 0)), 1e-15);
}

TEST(Sqr, Examples) {
    EXPECT_LE(max_abs(sqr(0.0, 1.3).entries() - Matrix::Identity(2, 2)), 0.0);
    const StateVector out = sqr(pi / 2.0, 0.0).apply(basis_state(qubit_layout(1), {1}));
    EXPECT_LE(std::abs(out[0] + kI), 1e-15);
    EXPECT_LE(std::abs(out[1]), 1e-15);
}

TEST(Sqr, Unitary) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int k = 0; k < 100; ++k) {
        const Matrix m = sqr(u(rng), u(rng)).entries();
        EXPECT_LE(max_abs(m.adjoint() * m - Matrix::Identity(2, 2)), 1e-14);
    }
}

TEST(CnotIdeal, Truth) {
    const OperatorMatrix c = cnot_ideal();
    EXPECT_EQ(c.apply(qubits(1, 0)).amplitudes(), qubits(1, 1).amplitudes());
    EXPECT_EQ(c.apply(qubits(0, 0)).amplitudes(), qubits(0, 0).amplitudes());
    EXPECT_EQ(c.apply(qubits(0, 1)).amplitudes(), qubits(0, 1).amplitudes());
    EXPECT_LE(max_abs(c.entries() * c.entries() - Matrix::Identity(4, 4)), 0.0);
}

TEST(CnotPulse, EffectiveModelFlipsTarget) {
    const double om = 0.02;
    const SystemSpec s = lambda_spec(1.0, 1.0, 0.0, om);
    const RunRecord r = cnot_pulse(s, om, qubits(1, 0), EvolutionModel::effective);
    EXPECT_GE(r.fidelity, 1.0 - 1e-10);
    EXPECT_NEAR(r.duration, std::sqrt(2.0) * pi / om, 1e-12);
    const RunRecord r11 = cnot_pulse(s, om, qubits(1, 1), EvolutionModel::effective);
    EXPECT_GE(r11.fidelity, 1.0 - 1e-10);
}

TEST(CnotPulse, ControlZeroInRegime) {
    const double om = 0.02;
    const SystemSpec s = lambda_spec(1.0, 1.0, 0.0, om);
    for (auto [a, b] : {std::pair{0u, 0u}, std::pair{0u, 1u}}) {
        const RunRecord r = cnot_pulse(s, om, qubits(a, b));
        EXPECT_GE(r.fidelity, 0.99);
    }
}

TEST(CnotPulse, LosslessFullModel) {
    const double om = 0.02;
    const SystemSpec s = lambda_spec(1.0, 1.0, 0.0, om);
    for (std::size_t a : {0u, 1u})
        for (std::size_t b : {0u, 1u}) EXPECT_GE(cnot_pulse(s, om, qubits(a, b)).fidelity, 0.999);
    EXPECT_THROW(cnot_pulse(s, 0.0, qubits(0, 0)), InvalidInput);
}

TEST(CnotProcess, MatchesPerInputRuns) {
    // column l of the process matrix is the conditional qubit state from input l
    const double om = 0.03;
    const SystemSpec s = lambda_spec(1.0, 1.0, 0.005, om);
    const Matrix m = cnot_process(s, om);
    Complex trace = 0.0;
    for (std::size_t l = 0; l < 4; ++l) {
        const RunRecord r = cnot_pulse(s, om, qubits(l / 2, l % 2));
        const StateVector q = extract_qubits(r.final_state);
        EXPECT_LE((m.col(static_cast<Eigen::Index>(l)) - q.amplitudes()).norm(), 1e-12);
        trace += std::conj(cnot_ideal().entries()(static_cast<Eigen::Index>(l ^ (l >> 1)), static_cast<Eigen::Index>(l))) *
                 m(static_cast<Eigen::Index>(l ^ (l >> 1)), static_cast<Eigen::Index>(l));
    }
    EXPECT_NEAR(process_fidelity(m, cnot_ideal().entries()), std::norm(trace) / 16.0, 1e-14);
}

TEST(CnotPulse, QubitEmbedRoundTrip) {
    const SystemSpec s = lambda_spec(1.0, 1.0, 0.0, 0.02);
    const StateVector in = superpose(qubit_layout(2), {{0.6, {0, 1}}, {Complex(0, 0.8), {1, 1}}});
    const StateVector back = extract_qubits(embed_qubits(s, in));
    EXPECT_LE((back.amplitudes() - in.amplitudes()).norm(), 0.0);
}

TEST(ProcessFidelity, IdealIsOne) {
    EXPECT_NEAR(process_fidelity(cnot_ideal().entries(), cnot_ideal().entries()), 1.0, 1e-15);
    EXPECT_NEAR(process_fidelity(Matrix::Identity(4, 4), cnot_ideal().entries()), 0.25, 1e-15);
}
