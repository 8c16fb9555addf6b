#pragma once

#include "atomq/qstate.hpp"

namespace atomq {

/// exp(A) for a dense complex matrix by Pade scaling and squaring.
///
/// Uses diagonal Pade approximants of degree 7, 9 or 13 selected from the
/// 1-norm of A (backward-error thresholds of Higham, 2005), with repeated
/// squaring for larger norms.
Matrix matrix_exponential(const Matrix& a);

}  // namespace atomq
