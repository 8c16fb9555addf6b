#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "atomq/error.hpp"
#include "atomq/pbg.hpp"

using namespace atomq;
using std::numbers::pi;

TEST(Jc, Amplitudes) {
    JcAmplitudes c = jc_amplitudes(1.0, 0.0);
    EXPECT_EQ(c.excited, Complex(1.0));
    EXPECT_EQ(c.ground, Complex(0.0));
    c = jc_amplitudes(2.0, pi / 4.0);
    EXPECT_LE(std::abs(c.excited), 1e-15);
    EXPECT_LE(std::abs(c.ground + 1.0), 1e-15);
    c = jc_amplitudes(1.0, pi / 4.0);
    EXPECT_LE(std::abs(c.excited - 1.0 / std::sqrt(2.0)), 1e-15);
    EXPECT_LE(std::abs(c.ground + 1.0 / std::sqrt(2.0)), 1e-15);
}

TEST(Jc, LossyMatchesLosslessAtZeroAndDecays) {
    const JcAmplitudes a = jc_amplitudes(1.0, 0.7, 0.0);
    const JcAmplitudes b = jc_amplitudes(1.0, 0.7, 1e-14);
    EXPECT_LE(std::abs(a.excited - b.excited), 1e-12);
    EXPECT_LE(std::abs(a.ground - b.ground), 1e-12);
    const JcAmplitudes c = jc_amplitudes(1.0, 0.7, 0.3);
    EXPECT_LT(std::norm(c.excited) + std::norm(c.ground), 1.0);
}

TEST(Pbg, NoFirstInteraction) {
    const StateVector s = pbg_final_state({.g = 1.0, .t1 = 0.0, .t2 = 0.4});
    EXPECT_NEAR(std::abs(s[pbg_layout().index({1, 0, 0})]), 1.0, 1e-15);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(Pbg, OptimalPlanGivesBellState) {
    const TransitPlan p = pbg_optimal_times(1.0);
    EXPECT_DOUBLE_EQ(p.t1, pi / 4.0);
    EXPECT_DOUBLE_EQ(p.t2, pi / 2.0);
    EXPECT_NEAR(pbg_bell_fidelity(p), 1.0, 1e-12);
    EXPECT_NEAR(pbg_bell_fidelity(pbg_optimal_times(3.0)), 1.0, 1e-12);
}

TEST(Pbg, FullTransferFirstAtom) {
    const double t2 = 0.3;
    const StateVector s = pbg_final_state({.g = 1.0, .t1 = pi / 2.0, .t2 = t2});
    const HilbertLayout l = pbg_layout();
    EXPECT_LE(std::abs(s[l.index({1, 0, 0})]), 1e-15);
    // c_g(t1) = -1, so the photon term carries -c_e(t2)
    EXPECT_LE(std::abs(s[l.index({0, 0, 1})] + std::cos(t2)), 1e-15);
}

TEST(Pbg, SequentialSimulationDiffersOnlyInSign) {
    const TransitPlan p{.g = 1.0, .t1 = 0.37, .t2 = 1.1};
    const StateVector a = pbg_final_state(p);
    const StateVector b = pbg_simulated_state(p);
    const HilbertLayout l = pbg_layout();
    EXPECT_LE(std::abs(a[l.index({1, 0, 0})] - b[l.index({1, 0, 0})]), 1e-12);
    EXPECT_LE(std::abs(a[l.index({0, 0, 1})] - b[l.index({0, 0, 1})]), 1e-12);
    EXPECT_LE(std::abs(a[l.index({0, 1, 0})] + b[l.index({0, 1, 0})]), 1e-12);
}

TEST(Pbg, Validation) {
    EXPECT_THROW(pbg_final_state({.g = 0.0, .t1 = 1.0, .t2 = 1.0}), InvalidInput);
    EXPECT_THROW(pbg_final_state({.g = 1.0, .t1 = -1.0, .t2 = 1.0}), InvalidInput);
}
