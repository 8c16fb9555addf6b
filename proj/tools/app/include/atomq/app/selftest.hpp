#pragma once

#include <vector>

#include "atomq/verify/invariants.hpp"

namespace atomq::app {

/// Library invariant suite plus CLI checks: identical CSV bytes for
/// identical config and seed, and row counts matching the grid sizes.
std::vector<verify::CheckResult> run_selftest(unsigned threads = 1);

}  // namespace atomq::app
