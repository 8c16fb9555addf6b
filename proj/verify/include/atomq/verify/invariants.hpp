#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace atomq::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteOptions {
    std::uint64_t seed = 7;
    std::size_t tsirelson_samples = 1000;
    std::size_t random_specs = 8;
};

/// Times fn and converts exceptions into a failed check.
CheckResult timed_check(const std::string& name, const std::function<CheckResult()>& fn);

/// Library-level invariants: norm monotonicity, P0 range, Hermitian norm
/// conservation, exponential vs integrator agreement, Tsirelson and
/// local-hidden-variable bounds, Fock-truncation convergence, DFS
/// stationarity, correlation bounds, PBG normalization and trajectory
/// determinism.
std::vector<CheckResult> run_invariant_suite(const SuiteOptions& options = {});

}  // namespace atomq::verify
