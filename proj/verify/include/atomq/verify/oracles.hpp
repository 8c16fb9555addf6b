#pragma once

// Independent reference computations. None of these call into the code
// paths they are used to check (no Pade exponential, no embed()).

#include <cstdint>
#include <random>
#include <vector>

#include "atomq/qstate.hpp"

namespace atomq::verify {

/// Kronecker product written out index by index.
Matrix kron(const Matrix& a, const Matrix& b);

/// psi(t) for psi' = -i H psi by classical RK4 with step-doubling error
/// control: a step is accepted when one full step and two half steps agree
/// to rel_tol relative to the state norm, otherwise the step is halved.
Vector rk_step_halving(const Matrix& h, const Vector& psi0, double t, double rel_tol = 1e-12);

/// Largest |E11 - E12' + E1'2 + E1'2'| over all 16 deterministic local
/// assignments of +-1 outcomes.
double lhv_max_chsh();

/// Largest |Re prod_k (a_k + i b_k)| over all deterministic +-1 assignments
/// of (a_k, b_k) to n parties: the local-realistic bound of the Mermin
/// operator.
double lhv_max_mermin(std::size_t n);

/// Haar-like random pure state on an arbitrary layout.
StateVector random_state(const HilbertLayout& layout, std::mt19937_64& rng);

/// Random complex matrix with standard normal entries.
Matrix random_matrix(Eigen::Index n, std::mt19937_64& rng);

}  // namespace atomq::verify
