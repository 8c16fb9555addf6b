#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "atomq/error.hpp"

namespace atomq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

struct Factor {
    std::string label;
    std::size_t dim = 0;

    bool operator==(const Factor&) const = default;
};

/// Tensor-product structure of a Hilbert space.
///
/// Basis states are enumerated row-major over the factor list: the last
/// factor varies fastest. For [("atom1",2),("atom2",2)] the order is
/// |00>, |01>, |10>, |11>.
class HilbertLayout {
public:
    HilbertLayout() = default;

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    std::size_t total_dim() const noexcept { return total_dim_; }
    std::size_t size() const noexcept { return factors_.size(); }

    /// Position of a factor in the list; throws InvalidInput for unknown labels.
    std::size_t position(std::string_view label) const;
    std::size_t dim(std::string_view label) const { return factors_[position(label)].dim; }
    bool contains(std::string_view label) const noexcept;

    /// Flat basis index from one local index per factor.
    std::size_t index(std::span<const std::size_t> local) const;
    std::size_t index(std::initializer_list<std::size_t> local) const {
        return index(std::span<const std::size_t>(local.begin(), local.size()));
    }
    /// Inverse of index().
    std::vector<std::size_t> digits(std::size_t flat) const;

    bool operator==(const HilbertLayout&) const = default;

private:
    friend HilbertLayout compose(std::vector<Factor> factors);
    std::vector<Factor> factors_;
    std::size_t total_dim_ = 0;
};

/// Builds a layout; rejects duplicate labels and zero dimensions.
HilbertLayout compose(std::vector<Factor> factors);

/// Layout of N qubits labelled q1..qN.
HilbertLayout qubit_layout(std::size_t n);

/// Amplitudes over a layout. Normalization is not required: conditional
/// no-jump states lose norm over time.
class StateVector {
public:
    StateVector(HilbertLayout layout, Vector amplitudes);

    const HilbertLayout& layout() const noexcept { return layout_; }
    const Vector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

    double norm_squared() const { return amplitudes_.squaredNorm(); }
    StateVector normalized() const;

private:
    HilbertLayout layout_;
    Vector amplitudes_;
};

/// Dense operator over a layout. A true hermitian_hint is checked on
/// construction (entrywise |A - A^dagger| <= 1e-12).
class OperatorMatrix {
public:
    OperatorMatrix(HilbertLayout layout, Matrix entries, bool hermitian_hint = false);

    const HilbertLayout& layout() const noexcept { return layout_; }
    const Matrix& entries() const noexcept { return entries_; }
    bool hermitian_hint() const noexcept { return hermitian_; }
    std::size_t dim() const noexcept { return layout_.total_dim(); }

    OperatorMatrix adjoint() const;
    /// Max entrywise deviation from hermiticity.
    double hermiticity_error() const;

    StateVector apply(const StateVector& psi) const;

    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(Complex c, const OperatorMatrix& a);

private:
    HilbertLayout layout_;
    Matrix entries_;
    bool hermitian_;
};

OperatorMatrix zero_operator(const HilbertLayout& layout);
OperatorMatrix identity_operator(const HilbertLayout& layout);

/// Places local_op on the factor named target_label, identity elsewhere.
OperatorMatrix embed(const Matrix& local_op, std::string_view target_label,
                     const HilbertLayout& layout);

/// Truncated annihilation operator: <n-1|b|n> = sqrt(n).
Matrix ladder(std::size_t dim);

/// |row><col| on a factor of dimension dim.
Matrix outer(std::size_t dim, std::size_t row, std::size_t col);

namespace pauli {
Matrix x();
Matrix y();
Matrix z();
Matrix identity();
}  // namespace pauli

StateVector basis_state(const HilbertLayout& layout, std::span<const std::size_t> local);
StateVector basis_state(const HilbertLayout& layout, std::initializer_list<std::size_t> local);

/// Sum of coefficient * basis state; the result is not renormalized.
StateVector superpose(const HilbertLayout& layout,
                      std::initializer_list<std::pair<Complex, std::vector<std::size_t>>> terms);

Complex inner(const StateVector& bra, const StateVector& ket);

/// |<target|psi>|^2 / <psi|psi>. Throws InvalidInput on zero-norm psi or a
/// layout mismatch.
double fidelity(const StateVector& psi, const StateVector& target);

void require_same_layout(const HilbertLayout& a, const HilbertLayout& b, std::string_view what);

}  // namespace atomq
