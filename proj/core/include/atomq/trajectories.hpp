#pragma once

#include <cstdint>
#include <vector>

#include "atomq/dynamics.hpp"
#include "atomq/qstate.hpp"

namespace atomq {

struct HistogramBin {
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::uint64_t count = 0;
};

struct TrajectoryOptions {
    /// Time step; 0 selects rate_scale_step(). Must satisfy
    /// dt <= 0.01 / (largest rate).
    double dt = 0.0;
    std::size_t histogram_bins = 20;
    bool continue_after_jump = true;
    /// Worker threads; 0 uses std::thread::hardware_concurrency().
    unsigned threads = 1;
};

struct TrajectoryBatch {
    std::uint64_t n_traj = 0;
    std::uint64_t seed = 0;
    double dt = 0.0;
    double p0_estimate = 0.0;
    double p0_stderr = 0.0;           // binomial sqrt(p(1-p)/n)
    std::vector<HistogramBin> jump_time_histogram;  // first-jump times
    double mean_jumps = 0.0;          // only meaningful with continue_after_jump
};

/// 0.01 / r where r is the largest |H_ij| or |(L^dagger L)_ij| entry.
double rate_scale_step(const OperatorMatrix& h_cond, const std::vector<OperatorMatrix>& jump_ops);

/// Monte Carlo unraveling of the no-jump evolution.
///
/// Each trajectory draws a threshold r ~ U(0,1) and propagates its
/// unnormalized state with a per-step propagator (truncated Taylor series of
/// exp(-i H dt), independent of the Pade exponential). A jump fires at the
/// first step whose squared norm falls below r; the channel is chosen with
/// weights ||L_k psi||^2, the state becomes L_k psi renormalized and a new
/// threshold is drawn. The jump probability per step is therefore
/// 1 - ||psi(t+dt)||^2 / ||psi(t)||^2 = dt sum_k <L_k^dagger L_k> + O(dt^2).
///
/// Trajectory k uses an mt19937_64 seeded from
/// splitmix64(splitmix64(seed) ^ k), so batches are reproducible and
/// independent of thread scheduling.
///
/// Throws NumericError when the norm grows within a step (H_cond with a
/// positive anti-Hermitian part, or dt too large for the series).
TrajectoryBatch run_trajectories(const OperatorMatrix& h_cond,
                                 const std::vector<OperatorMatrix>& jump_ops,
                                 const StateVector& psi0, double t_end, std::uint64_t n_traj,
                                 std::uint64_t seed, const TrajectoryOptions& options = {});

/// Convenience wrapper: h_cond(spec), jump_operators(spec), and
/// dt = 0.01 / max(kappa, Gamma, g) unless options.dt is set.
TrajectoryBatch run_trajectories(const SystemSpec& spec, const StateVector& psi0, double t_end,
                                 std::uint64_t n_traj, std::uint64_t seed,
                                 TrajectoryOptions options = {});

}  // namespace atomq
