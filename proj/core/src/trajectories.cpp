#include "atomq/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <thread>

namespace atomq {

namespace {

constexpr double kNormGrowthTolerance = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// exp(A) by its Taylor series; only used for the small per-step generator.
Matrix taylor_step(const Matrix& a) {
    const auto n = a.rows();
    Matrix sum = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k <= 60; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) return sum;
    }
    throw NumericError("per-step Taylor series did not converge; reduce dt");
}

struct TrajectoryOutcome {
    std::optional<double> first_jump;
    std::uint64_t jumps = 0;
};

}  // namespace

double rate_scale_step(const OperatorMatrix& h_cond, const std::vector<OperatorMatrix>& jump_ops) {
    double rate = h_cond.entries().cwiseAbs().maxCoeff();
    for (const auto& l : jump_ops) {
        rate = std::max(rate, (l.entries().adjoint() * l.entries()).cwiseAbs().maxCoeff());
    }
    if (rate == 0.0) return 0.01;
    return 0.01 / rate;
}

TrajectoryBatch run_trajectories(const OperatorMatrix& h_cond,
                                 const std::vector<OperatorMatrix>& jump_ops,
                                 const StateVector& psi0, double t_end, std::uint64_t n_traj,
                                 std::uint64_t seed, const TrajectoryOptions& options) {
    require_same_layout(h_cond.layout(), psi0.layout(), "trajectories");
    for (const auto& l : jump_ops) require_same_layout(h_cond.layout(), l.layout(), "trajectories");
    if (!std::isfinite(t_end) || t_end < 0.0) throw InvalidInput("t_end must be finite and >= 0");
    if (n_traj < 1) throw InvalidInput("n_traj must be >= 1");
    if (std::abs(psi0.norm_squared() - 1.0) > 1e-9) throw InvalidInput("initial state must be normalized");
    if (options.histogram_bins < 1) throw InvalidInput("histogram needs at least one bin");

    double dt = options.dt > 0.0 ? options.dt : rate_scale_step(h_cond, jump_ops);
    if (!std::isfinite(dt) || dt <= 0.0) throw InvalidInput("time step must be positive");
    const auto n_steps = static_cast<std::uint64_t>(std::ceil(t_end / dt - 1e-12));
    if (n_steps > 0) dt = t_end / static_cast<double>(n_steps);

    const Matrix step = taylor_step(-kI * dt * h_cond.entries());
    {
        Eigen::JacobiSVD<Matrix> svd(step);
        if (svd.singularValues()(0) > 1.0 + kNormGrowthTolerance) {
            throw NumericError("no-jump step increases the norm; dt is unstable or H_cond has a "
                               "positive anti-Hermitian part");
        }
    }

    std::vector<TrajectoryOutcome> outcomes(n_traj);
    const auto simulate = [&](std::uint64_t k) {
        std::mt19937_64 rng(splitmix64(splitmix64(seed) ^ k));
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        Vector psi = psi0.amplitudes();
        Vector next(psi.size());
        double threshold = uniform(rng);
        TrajectoryOutcome out;
        for (std::uint64_t s = 1; s <= n_steps; ++s) {
            next.noalias() = step * psi;
            psi.swap(next);
            if (psi.squaredNorm() >= threshold) continue;

            double total = 0.0;
            std::vector<double> weights(jump_ops.size());
            for (std::size_t c = 0; c < jump_ops.size(); ++c) {
                weights[c] = (jump_ops[c].entries() * psi).squaredNorm();
                total += weights[c];
            }
            if (!(total > 0.0)) {
                throw NumericError("norm decayed but no jump channel is populated");
            }
            double pick = uniform(rng) * total;
            std::size_t c = 0;
            while (c + 1 < jump_ops.size() && pick >= weights[c]) pick -= weights[c++];
            psi = jump_ops[c].entries() * psi;
            psi /= psi.norm();
            if (!out.first_jump) out.first_jump = static_cast<double>(s) * dt;
            ++out.jumps;
            if (!options.continue_after_jump) break;
            threshold = uniform(rng);
        }
        outcomes[k] = out;
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                            : options.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_traj));
    if (threads <= 1) {
        for (std::uint64_t k = 0; k < n_traj; ++k) simulate(k);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t k = w; k < n_traj; k += threads) simulate(k);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    TrajectoryBatch batch;
    batch.n_traj = n_traj;
    batch.seed = seed;
    batch.dt = dt;
    const std::size_t bins = options.histogram_bins;
    for (std::size_t b = 0; b < bins; ++b) {
        batch.jump_time_histogram.push_back(
            {t_end * static_cast<double>(b) / static_cast<double>(bins),
             t_end * static_cast<double>(b + 1) / static_cast<double>(bins), 0});
    }
    std::uint64_t survivors = 0;
    std::uint64_t total_jumps = 0;
    for (const auto& o : outcomes) {
        total_jumps += o.jumps;
        if (!o.first_jump) {
            ++survivors;
            continue;
        }
        auto b = static_cast<std::size_t>(*o.first_jump / t_end * static_cast<double>(bins));
        batch.jump_time_histogram[std::min(b, bins - 1)].count++;
    }
    const double n = static_cast<double>(n_traj);
    batch.p0_estimate = static_cast<double>(survivors) / n;
    batch.p0_stderr = std::sqrt(batch.p0_estimate * (1.0 - batch.p0_estimate) / n);
    batch.mean_jumps = static_cast<double>(total_jumps) / n;
    return batch;
}

TrajectoryBatch run_trajectories(const SystemSpec& spec, const StateVector& psi0, double t_end,
                                 std::uint64_t n_traj, std::uint64_t seed,
                                 TrajectoryOptions options) {
    const double rate = std::max({spec.kappa, spec.gamma, spec.g});
    const double limit = 0.01 / rate;
    if (options.dt <= 0.0) options.dt = limit;
    if (options.dt > limit * (1.0 + 1e-12)) {
        throw InvalidInput("dt exceeds 0.01 / max(kappa, gamma, g)");
    }
    return run_trajectories(h_cond(spec), jump_operators(spec), psi0, t_end, n_traj, seed, options);
}

}  // namespace atomq
