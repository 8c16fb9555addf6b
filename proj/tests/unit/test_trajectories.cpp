#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "atomq/error.hpp"
#include "atomq/trajectories.hpp"

using namespace atomq;
using std::numbers::pi;

namespace {

struct Decay {
    HilbertLayout layout = compose({{"cav", 3}});
    OperatorMatrix h;
    std::vector<OperatorMatrix> jumps;
    explicit Decay(double kappa)
        : h(layout, Complex(0, -kappa) * (ladder(3).adjoint() * ladder(3))),
          jumps{OperatorMatrix(layout, std::sqrt(2.0 * kappa) * ladder(3))} {}
};

}  // namespace

TEST(Trajectories, HermitianNeverJumps) {
    const SystemSpec s = pair_spec(1.0, 0.0, 0.0, 0.2);
    const StateVector psi = basis_state(s.layout(), {0, 0, 0});
    const TrajectoryBatch b = run_trajectories(h_cond(s), {}, psi, 3.0, 200, 1, {.dt = 0.01});
    EXPECT_EQ(b.p0_estimate, 1.0);
    EXPECT_EQ(b.p0_stderr, 0.0);
    EXPECT_EQ(b.mean_jumps, 0.0);
}

TEST(Trajectories, CavityDecay) {
    const Decay d(1.0);
    const StateVector one = basis_state(d.layout, {1});
    const double t = 0.5;
    const TrajectoryBatch b = run_trajectories(d.h, d.jumps, one, t, 10000, 42, {.dt = 0.01});
    EXPECT_LE(std::abs(b.p0_estimate - std::exp(-2.0 * t)), 4.0 * b.p0_stderr);
    std::uint64_t jumped = 0;
    for (const auto& bin : b.jump_time_histogram) {
        jumped += bin.count;
        EXPECT_LE(bin.t_hi, t + 1e-12);
    }
    EXPECT_EQ(jumped, static_cast<std::uint64_t>(std::llround((1.0 - b.p0_estimate) * 10000)));
    // after the only photon leaves nothing else can happen
    EXPECT_NEAR(b.mean_jumps, 1.0 - b.p0_estimate, 1e-12);
}

TEST(Trajectories, PairPreparationAgainstDeterministic) {
    const double om = 0.2;
    const SystemSpec s = pair_spec(1.0, 1.0, 0.01, om);
    const StateVector psi = basis_state(s.layout(), {0, 0, 0});
    const double t = pi / om;
    const TrajectoryBatch b = run_trajectories(s, psi, t, 4000, 3);
    const double det = no_photon_probability(h_cond(s), psi, t);
    EXPECT_LE(std::abs(b.p0_estimate - det), 4.0 * b.p0_stderr);
}

TEST(Trajectories, SeedAndThreadIndependence) {
    const Decay d(0.7);
    const StateVector one = basis_state(d.layout, {1});
    const auto a = run_trajectories(d.h, d.jumps, one, 1.0, 500, 5, {.dt = 0.01, .threads = 1});
    const auto b = run_trajectories(d.h, d.jumps, one, 1.0, 500, 5, {.dt = 0.01, .threads = 3});
    const auto c = run_trajectories(d.h, d.jumps, one, 1.0, 500, 6, {.dt = 0.01, .threads = 1});
    EXPECT_EQ(a.p0_estimate, b.p0_estimate);
    for (std::size_t k = 0; k < a.jump_time_histogram.size(); ++k) {
        EXPECT_EQ(a.jump_time_histogram[k].count, b.jump_time_histogram[k].count);
    }
    EXPECT_NE(a.p0_estimate, c.p0_estimate);
}

TEST(Trajectories, StepHalvingKeepsOutcomes) {
    const Decay d(1.0);
    const StateVector one = basis_state(d.layout, {1});
    const auto a = run_trajectories(d.h, d.jumps, one, 0.8, 2000, 9, {.dt = 0.01});
    const auto b = run_trajectories(d.h, d.jumps, one, 0.8, 2000, 9, {.dt = 0.005});
    EXPECT_LE(std::abs(a.p0_estimate - b.p0_estimate), 2.0 / 2000.0 + 1e-15);
}

TEST(Trajectories, Errors) {
    const Decay d(1.0);
    const StateVector one = basis_state(d.layout, {1});
    const OperatorMatrix gain(d.layout, Complex(0, 0.5) * Matrix::Identity(3, 3));
    EXPECT_THROW(run_trajectories(gain, {}, one, 1.0, 10, 1, {.dt = 0.01}), NumericError);
    EXPECT_THROW(run_trajectories(d.h, d.jumps, one, -1.0, 10, 1), InvalidInput);
    EXPECT_THROW(run_trajectories(d.h, d.jumps, one, 1.0, 0, 1), InvalidInput);
    const SystemSpec s = pair_spec(1.0, 1.0, 0.0, 0.1);
    EXPECT_THROW(run_trajectories(s, basis_state(s.layout(), {0, 0, 0}), 1.0, 10, 1, {.dt = 0.5}),
                 InvalidInput);
}

TEST(Trajectories, RateScaleStep) {
    const Decay d(2.0);
    // largest entry: (L^dagger L)_{22} = 2 kappa * 2 = 8
    EXPECT_NEAR(rate_scale_step(d.h, d.jumps), 0.01 / 8.0, 1e-15);
}
