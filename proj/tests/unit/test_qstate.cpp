#include <gtest/gtest.h>

#include <random>

#include "atomq/error.hpp"
#include "atomq/qstate.hpp"
#include "atomq/verify/oracles.hpp"

using namespace atomq;

TEST(Layout, TwoQubitOrder) {
    const HilbertLayout l = compose({{"atom1", 2}, {"atom2", 2}});
    EXPECT_EQ(l.total_dim(), 4u);
    EXPECT_EQ(l.index({0, 0}), 0u);
    EXPECT_EQ(l.index({0, 1}), 1u);
    EXPECT_EQ(l.index({1, 0}), 2u);
    EXPECT_EQ(l.index({1, 1}), 3u);
}

TEST(Layout, ThreeByThreeByThree) {
    const HilbertLayout l = compose({{"atom1", 3}, {"atom2", 3}, {"cav", 3}});
    EXPECT_EQ(l.total_dim(), 27u);
    for (std::size_t k = 0; k < 27; ++k) EXPECT_EQ(l.index(l.digits(k)), k);
}

TEST(Layout, Rejects) {
    EXPECT_THROW(compose({{"cav", 0}}), InvalidInput);
    EXPECT_THROW(compose({{"a", 2}, {"a", 3}}), InvalidInput);
    const HilbertLayout l = qubit_layout(2);
    EXPECT_THROW(l.position("nope"), InvalidInput);
    EXPECT_THROW(l.index({2, 0}), InvalidInput);
}

TEST(StateVectorTest, LengthMustMatch) {
    EXPECT_THROW(StateVector(qubit_layout(2), Vector::Zero(3)), InvalidInput);
}

TEST(Embed, SigmaXOnFirstQubit) {
    const HilbertLayout l = qubit_layout(2);
    const StateVector out = embed(pauli::x(), "q1", l).apply(basis_state(l, {0, 0}));
    EXPECT_EQ(out.amplitudes(), basis_state(l, {1, 0}).amplitudes());
}

TEST(Embed, LadderLowersPhoton) {
    const HilbertLayout l = compose({{"atom1", 2}, {"cav", 3}});
    const StateVector out = embed(ladder(3), "cav", l).apply(basis_state(l, {0, 1}));
    EXPECT_NEAR(std::abs(out[l.index({0, 0})] - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-15);
}

TEST(Embed, MatchesBruteForceKron) {
    const HilbertLayout l = compose({{"a", 2}, {"b", 3}, {"c", 2}});
    std::mt19937_64 rng(3);
    const Matrix local = verify::random_matrix(3, rng);
    const Matrix expected = verify::kron(verify::kron(Matrix::Identity(2, 2), local), Matrix::Identity(2, 2));
    EXPECT_LE((embed(local, "b", l).entries() - expected).cwiseAbs().maxCoeff(), 1e-14);
    const Matrix sy = verify::kron(Matrix::Identity(2, 2), pauli::y());
    EXPECT_LE((embed(pauli::y(), "q2", qubit_layout(2)).entries() - sy).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Embed, Errors) {
    EXPECT_THROW(embed(pauli::x(), "cav", qubit_layout(2)), InvalidInput);
    EXPECT_THROW(embed(ladder(3), "q1", qubit_layout(2)), InvalidInput);
}

TEST(Ladder, Entries) {
    Matrix two(2, 2);
    two << 0, 1, 0, 0;
    EXPECT_EQ(ladder(2), two);
    const Matrix b = ladder(3);
    EXPECT_NEAR(std::abs(b(1, 2) - std::sqrt(2.0)), 0.0, 1e-15);
    const Matrix n = b.adjoint() * b;
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(n(k, k).real(), k, 1e-14);
    EXPECT_THROW(ladder(1), InvalidInput);
}

TEST(Operator, HermitianHintChecked) {
    const HilbertLayout l = qubit_layout(1);
    EXPECT_NO_THROW(OperatorMatrix(l, pauli::y(), true));
    EXPECT_THROW(OperatorMatrix(l, ladder(2), true), InvalidInput);
    EXPECT_THROW(OperatorMatrix(l, Matrix::Identity(3, 3)), InvalidInput);
}

TEST(Fidelity, Basics) {
    const HilbertLayout l = qubit_layout(2);
    const StateVector a = basis_state(l, {0, 0});
    EXPECT_DOUBLE_EQ(fidelity(a, a), 1.0);
    EXPECT_DOUBLE_EQ(fidelity(basis_state(l, {0, 1}), a), 0.0);
    const StateVector scaled(l, 0.6 * a.amplitudes());
    EXPECT_NEAR(fidelity(scaled, a), 1.0, 1e-15);
    EXPECT_THROW(fidelity(StateVector(l, Vector::Zero(4)), a), InvalidInput);
    EXPECT_THROW(fidelity(a, basis_state(qubit_layout(1), {0})), InvalidInput);
}

TEST(Fidelity, RangeOnRandomStates) {
    std::mt19937_64 rng(11);
    const HilbertLayout l = qubit_layout(3);
    for (int k = 0; k < 100; ++k) {
        const double f = fidelity(verify::random_state(l, rng), verify::random_state(l, rng));
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
    }
}
