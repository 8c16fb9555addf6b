#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "atomq/dynamics.hpp"
#include "atomq/error.hpp"
#include "atomq/verify/oracles.hpp"

using namespace atomq;
using std::numbers::pi;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

SystemSpec two_level(double g, double kappa, double gamma, Complex omega_minus) {
    return pair_spec(g, kappa, gamma, omega_minus);
}

}  // namespace

TEST(Spec, Validation) {
    EXPECT_THROW(pair_spec(0.0, 1.0, 0.0, 0.1), InvalidInput);
    EXPECT_THROW(pair_spec(1.0, -1.0, 0.0, 0.1), InvalidInput);
    EXPECT_THROW(pair_spec(1.0, 1.0, -0.1, 0.1), InvalidInput);
    EXPECT_THROW(pair_spec(1.0, 1.0, 0.0, 0.1, 0), InvalidInput);
    SystemSpec s = pair_spec(1.0, 1.0, 0.0, 0.1);
    s.rabi[{0, "0-2"}] = 1.0;
    EXPECT_THROW(h_cond(s), InvalidInput);
    SystemSpec l = lambda_spec(1.0, 1.0, 0.0, 0.1);
    l.rabi[{1, "0-1"}] = 1.0;
    EXPECT_THROW(h_cond(l), InvalidInput);
}

TEST(HCondTwoLevel, GroundStateIsDark) {
    const SystemSpec s = two_level(1.0, 0.0, 0.0, 0.0);
    const OperatorMatrix h = h_cond_two_level(s);
    const StateVector ground = basis_state(s.layout(), {0, 0, 0});
    EXPECT_LE(h.apply(ground).amplitudes().norm(), 0.0);
}

TEST(HCondTwoLevel, SingleExcitationBlock) {
    const SystemSpec s = two_level(1.0, 0.0, 0.0, 0.0);
    const HilbertLayout l = s.layout();
    const Matrix h = h_cond_two_level(s).entries();
    const std::size_t e1 = l.index({1, 0, 0}), e2 = l.index({0, 1, 0}), ph = l.index({0, 0, 1});
    const std::size_t idx[3] = {e1, e2, ph};
    // i g (b |2><0| - h.c.): photon absorbed by either atom with +i, emitted with -i.
    Matrix expected(3, 3);
    expected << 0, 0, kI, 0, 0, kI, -kI, -kI, 0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            EXPECT_LE(std::abs(h(idx[r], idx[c]) - expected(r, c)), 1e-15) << r << "," << c;
}

TEST(HCondTwoLevel, AntiHermitianPartIsDissipative) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        const SystemSpec s = two_level(0.1 + u(rng), u(rng), u(rng), Complex(u(rng), u(rng)));
        const Matrix h = h_cond(s).entries();
        const Matrix anti = (h - h.adjoint()) / (2.0 * kI);
        Eigen::SelfAdjointEigenSolver<Matrix> es(anti);
        EXPECT_LE(es.eigenvalues().maxCoeff(), 1e-12);
    }
}

TEST(HCondTwoLevel, MatchesKroneckerConstruction) {
    const double g = 0.7, kappa = 0.3, gamma = 0.05;
    const Complex om(0.2, 0.1);
    const SystemSpec s = two_level(g, kappa, gamma, om);
    const Matrix i2 = Matrix::Identity(2, 2), i3 = Matrix::Identity(3, 3);
    Matrix b = Matrix::Zero(3, 3);
    b(0, 1) = 1.0;
    b(1, 2) = std::sqrt(2.0);
    Matrix up = Matrix::Zero(2, 2);  // |e><g|
    up(1, 0) = 1.0;
    using verify::kron;
    const Matrix up1 = kron(kron(up, i2), i3), up2 = kron(kron(i2, up), i3);
    const Matrix bf = kron(kron(i2, i2), b);
    const Complex o1 = om / std::sqrt(2.0), o2 = -om / std::sqrt(2.0);
    Matrix expected = kI * g * (bf * (up1 + up2) - (up1 + up2).adjoint() * bf.adjoint());
    expected += 0.5 * (o1 * up1 + o2 * up2);
    expected += 0.5 * (o1 * up1 + o2 * up2).adjoint();
    expected -= kI * gamma * (up1 * up1.adjoint() + up2 * up2.adjoint());
    expected -= kI * kappa * bf.adjoint() * bf;
    EXPECT_LE(max_abs(h_cond(s).entries() - expected), 1e-15);
}

TEST(HCondLambda, QubitStatesAndDarkStateAnnihilated) {
    const SystemSpec s = lambda_spec(1.0, 0.0, 0.0, 0.0);
    const OperatorMatrix h = h_cond_lambda(s);
    const HilbertLayout l = s.layout();
    for (std::size_t a : {0u, 1u})
        for (std::size_t b : {0u, 1u}) EXPECT_LE(h.apply(basis_state(l, {a, b, 0})).amplitudes().norm(), 1e-12);
    const StateVector dark = superpose(l, {{1.0 / std::sqrt(2.0), {1, 2, 0}}, {-1.0 / std::sqrt(2.0), {2, 1, 0}}});
    EXPECT_LE(h.apply(dark).amplitudes().norm(), 1e-12);
}

TEST(HCondLambda, CouplingAndLaserSigns) {
    const double omega = 0.3;
    const SystemSpec s = lambda_spec(1.0, 0.0, 0.0, omega);
    const HilbertLayout l = s.layout();
    const Matrix h = h_cond_lambda(s).entries();
    // Cavity on 1-2 of atom 1: <2 1 0|H|1 1 1> = i g.
    EXPECT_LE(std::abs(h(l.index({2, 1, 0}), l.index({1, 1, 1})) - kI), 1e-15);
    EXPECT_LE(std::abs(h(l.index({1, 1, 1}), l.index({2, 1, 0})) + kI), 1e-15);
    // Lasers sqrt(2) Omega / 2 on atom 1 (1-2) and atom 2 (0-2).
    const double half = std::sqrt(2.0) * omega / 2.0;
    EXPECT_LE(std::abs(h(l.index({2, 0, 0}), l.index({1, 0, 0})) - half), 1e-15);
    EXPECT_LE(std::abs(h(l.index({0, 2, 0}), l.index({0, 0, 0})) - half), 1e-15);
    EXPECT_LE(std::abs(h(l.index({2, 0, 0}), l.index({0, 0, 0}))), 0.0);
    EXPECT_LE(std::abs(h(l.index({1, 2, 0}), l.index({1, 1, 0}))), 0.0);
}

TEST(HCondLambda, GammaOnlyDamping) {
    SystemSpec s = lambda_spec(1.0, 0.0, 0.25, 0.0);
    s.g = 1e-300;  // effectively uncoupled, still a valid spec
    const HilbertLayout l = s.layout();
    const Matrix h = h_cond_lambda(s).entries();
    for (std::size_t k = 0; k < l.total_dim(); ++k) {
        const auto d = l.digits(k);
        const double excited = (d[0] == 2) + (d[1] == 2);
        EXPECT_NEAR(h(k, k).imag(), -0.25 * excited, 1e-15);
    }
}

TEST(HCondLambda, MissingRabiEntry) {
    SystemSpec s = lambda_spec(1.0, 0.0, 0.0, 0.1);
    s.rabi.erase({1, "0-2"});
    EXPECT_THROW(h_cond_lambda(s), InvalidInput);
    EXPECT_THROW(h_cond_two_level(s), InvalidInput);
}

TEST(Evolve, ZeroHamiltonian) {
    const HilbertLayout l = qubit_layout(2);
    const StateVector psi = superpose(l, {{0.6, {0, 0}}, {Complex(0, 0.8), {1, 1}}});
    const StateVector out = evolve_no_jump(zero_operator(l), psi, 7.0);
    EXPECT_LE((out.amplitudes() - psi.amplitudes()).norm(), 1e-15);
}

TEST(Evolve, CavityDecay) {
    const HilbertLayout l = compose({{"cav", 3}});
    const Matrix b = ladder(3);
    const OperatorMatrix h(l, Complex(0, -0.4) * (b.adjoint() * b));
    const StateVector one = basis_state(l, {1});
    for (double t : {0.0, 0.5, 3.0}) {
        EXPECT_NEAR(std::abs(evolve_no_jump(h, one, t)[1]), std::exp(-0.4 * t), 1e-14);
        EXPECT_NEAR(no_photon_probability(h, one, t), std::exp(-0.8 * t), 1e-14);
    }
}

TEST(Evolve, Errors) {
    const HilbertLayout l = qubit_layout(1);
    const StateVector psi = basis_state(l, {0});
    EXPECT_THROW(evolve_no_jump(zero_operator(l), psi, -1.0), InvalidInput);
    EXPECT_THROW(evolve_no_jump(zero_operator(qubit_layout(2)), psi, 1.0), InvalidInput);
    EXPECT_THROW(evolve_no_jump(zero_operator(l), StateVector(l, 2.0 * psi.amplitudes()), 1.0), InvalidInput);
}

TEST(Evolve, HermitianKeepsProbabilityOne) {
    const SystemSpec s = two_level(1.0, 0.0, 0.0, 0.3);
    const StateVector psi = basis_state(s.layout(), {0, 0, 0});
    for (double t : {1.0, 10.0, 100.0}) EXPECT_NEAR(no_photon_probability(h_cond(s), psi, t), 1.0, 1e-12);
}

TEST(Evolve, AgreesWithIntegrator) {
    const SystemSpec s = two_level(1.0, 1.0, 0.01, 0.1);
    const StateVector psi = basis_state(s.layout(), {0, 0, 0});
    const OperatorMatrix h = h_cond(s);
    const Vector rk = verify::rk_step_halving(h.entries(), psi.amplitudes(), 20.0, 1e-13);
    EXPECT_LE((evolve_no_jump(h, psi, 20.0).amplitudes() - rk).norm(), 1e-9);
}

TEST(JumpOps, FactorTwoConvention) {
    const SystemSpec s = two_level(1.0, 0.5, 0.2, 0.1);
    const auto ops = jump_operators(s);
    ASSERT_EQ(ops.size(), 3u);
    const Matrix h = h_cond(s).entries();
    Matrix sum = Matrix::Zero(h.rows(), h.cols());
    for (const auto& l : ops) sum += l.entries().adjoint() * l.entries();
    // -i/2 sum L^dagger L equals the anti-Hermitian part of H_cond.
    EXPECT_LE(max_abs((h - h.adjoint()) / 2.0 + 0.5 * kI * sum), 1e-15);
    EXPECT_EQ(jump_operators(two_level(1.0, 0.5, 0.0, 0.1)).size(), 1u);
}

TEST(Regime, Examples) {
    const SystemSpec a = pair_spec(1.0, 1.0, 0.001, 0.02);
    const RegimeReport r = check_regime(a, 0.02);
    EXPECT_TRUE(r.in_regime);
    EXPECT_NEAR(r.gamma_over_omega, 0.05, 1e-15);
    EXPECT_NEAR(r.omega_kappa_over_g2, 0.02, 1e-15);
    EXPECT_NEAR(r.omega_over_kappa, 0.02, 1e-15);
    EXPECT_FALSE(check_regime(pair_spec(1.0, 1.0, 0.0, 0.5), 0.5).in_regime);
    EXPECT_FALSE(check_regime(pair_spec(1.0, 1.0, 0.02, 0.02), 0.02).in_regime);
    EXPECT_FALSE(check_regime(a, 0.02, 0.04).in_regime);
    EXPECT_THROW(check_regime(a, 0.0), InvalidInput);
}
