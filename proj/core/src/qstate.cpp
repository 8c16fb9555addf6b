#include "atomq/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace atomq {

namespace {

constexpr double kHermitianTolerance = 1e-12;

}  // namespace

std::size_t HilbertLayout::position(std::string_view label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].label == label) return i;
    }
    throw InvalidInput("unknown factor label '" + std::string(label) + "'");
}

bool HilbertLayout::contains(std::string_view label) const noexcept {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.label == label; });
}

std::size_t HilbertLayout::index(std::span<const std::size_t> local) const {
    if (local.size() != factors_.size()) {
        throw InvalidInput("basis index needs one digit per factor");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (local[i] >= factors_[i].dim) {
            throw InvalidInput("local index out of range for factor '" + factors_[i].label + "'");
        }
        flat = flat * factors_[i].dim + local[i];
    }
    return flat;
}

std::vector<std::size_t> HilbertLayout::digits(std::size_t flat) const {
    if (flat >= total_dim_) throw InvalidInput("flat basis index out of range");
    std::vector<std::size_t> out(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        out[i] = flat % factors_[i].dim;
        flat /= factors_[i].dim;
    }
    return out;
}

HilbertLayout compose(std::vector<Factor> factors) {
    if (factors.empty()) throw InvalidInput("layout needs at least one factor");
    std::unordered_set<std::string> seen;
    std::size_t total = 1;
    for (const auto& f : factors) {
        if (f.dim == 0) throw InvalidInput("factor '" + f.label + "' has zero dimension");
        if (!seen.insert(f.label).second) {
            throw InvalidInput("duplicate factor label '" + f.label + "'");
        }
        total *= f.dim;
    }
    HilbertLayout layout;
    layout.factors_ = std::move(factors);
    layout.total_dim_ = total;
    return layout;
}

HilbertLayout qubit_layout(std::size_t n) {
    std::vector<Factor> factors;
    for (std::size_t i = 1; i <= n; ++i) factors.push_back({"q" + std::to_string(i), 2});
    return compose(std::move(factors));
}

void require_same_layout(const HilbertLayout& a, const HilbertLayout& b, std::string_view what) {
    if (!(a == b)) throw InvalidInput(std::string(what) + ": layout mismatch");
}

StateVector::StateVector(HilbertLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
        throw InvalidInput("state length does not match layout dimension");
    }
    if (!amplitudes_.allFinite()) throw NumericError("state has non-finite amplitudes");
}

StateVector StateVector::normalized() const {
    const double n = amplitudes_.norm();
    if (n == 0.0) throw InvalidInput("cannot normalize a zero state");
    return {layout_, amplitudes_ / n};
}

OperatorMatrix::OperatorMatrix(HilbertLayout layout, Matrix entries, bool hermitian_hint)
    : layout_(std::move(layout)), entries_(std::move(entries)), hermitian_(hermitian_hint) {
    const auto n = static_cast<Eigen::Index>(layout_.total_dim());
    if (entries_.rows() != n || entries_.cols() != n) {
        throw InvalidInput("operator shape does not match layout dimension");
    }
    if (hermitian_ && hermiticity_error() > kHermitianTolerance) {
        throw InvalidInput("operator marked hermitian is not hermitian");
    }
}

OperatorMatrix OperatorMatrix::adjoint() const {
    return {layout_, entries_.adjoint(), hermitian_};
}

double OperatorMatrix::hermiticity_error() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

StateVector OperatorMatrix::apply(const StateVector& psi) const {
    require_same_layout(layout_, psi.layout(), "operator application");
    return {layout_, entries_ * psi.amplitudes()};
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_layout(a.layout_, b.layout_, "operator product");
    return {a.layout_, a.entries_ * b.entries_};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_layout(a.layout_, b.layout_, "operator sum");
    return {a.layout_, a.entries_ + b.entries_, a.hermitian_ && b.hermitian_};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_layout(a.layout_, b.layout_, "operator difference");
    return {a.layout_, a.entries_ - b.entries_, a.hermitian_ && b.hermitian_};
}

OperatorMatrix operator*(Complex c, const OperatorMatrix& a) {
    return {a.layout_, c * a.entries_, a.hermitian_ && c.imag() == 0.0};
}

OperatorMatrix zero_operator(const HilbertLayout& layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    return {layout, Matrix::Zero(n, n), true};
}

OperatorMatrix identity_operator(const HilbertLayout& layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    return {layout, Matrix::Identity(n, n), true};
}

OperatorMatrix embed(const Matrix& local_op, std::string_view target_label,
                     const HilbertLayout& layout) {
    const std::size_t pos = layout.position(target_label);
    const std::size_t d = layout.factors()[pos].dim;
    if (local_op.rows() != local_op.cols() || static_cast<std::size_t>(local_op.rows()) != d) {
        throw InvalidInput("local operator dimension does not match factor '" +
                           std::string(target_label) + "'");
    }
    std::size_t left = 1;
    for (std::size_t i = 0; i < pos; ++i) left *= layout.factors()[i].dim;
    const std::size_t right = layout.total_dim() / (left * d);

    // out[(l*d + a)*right + r, (l*d + b)*right + r] = local(a, b)
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t l = 0; l < left; ++l) {
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                const Complex v = local_op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                if (v == Complex{}) continue;
                for (std::size_t r = 0; r < right; ++r) {
                    out(static_cast<Eigen::Index>((l * d + a) * right + r),
                        static_cast<Eigen::Index>((l * d + b) * right + r)) = v;
                }
            }
        }
    }
    const bool herm = (local_op - local_op.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTolerance;
    return {layout, std::move(out), herm};
}

Matrix ladder(std::size_t dim) {
    if (dim < 2) throw InvalidInput("ladder operator needs dimension >= 2");
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix b = Matrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) b(k - 1, k) = std::sqrt(static_cast<double>(k));
    return b;
}

Matrix outer(std::size_t dim, std::size_t row, std::size_t col) {
    if (row >= dim || col >= dim) throw InvalidInput("outer product index out of range");
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix m = Matrix::Zero(n, n);
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
    return m;
}

namespace pauli {

Matrix x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix y() {
    Matrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

Matrix z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Matrix identity() { return Matrix::Identity(2, 2); }

}  // namespace pauli

StateVector basis_state(const HilbertLayout& layout, std::span<const std::size_t> local) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    v(static_cast<Eigen::Index>(layout.index(local))) = 1.0;
    return {layout, std::move(v)};
}

StateVector basis_state(const HilbertLayout& layout, std::initializer_list<std::size_t> local) {
    return basis_state(layout, std::span<const std::size_t>(local.begin(), local.size()));
}

StateVector superpose(const HilbertLayout& layout,
                      std::initializer_list<std::pair<Complex, std::vector<std::size_t>>> terms) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    for (const auto& [c, digits] : terms) {
        v(static_cast<Eigen::Index>(layout.index(digits))) += c;
    }
    return {layout, std::move(v)};
}

Complex inner(const StateVector& bra, const StateVector& ket) {
    require_same_layout(bra.layout(), ket.layout(), "inner product");
    return bra.amplitudes().dot(ket.amplitudes());
}

double fidelity(const StateVector& psi, const StateVector& target) {
    require_same_layout(psi.layout(), target.layout(), "fidelity");
    const double n = psi.norm_squared();
    if (n == 0.0) throw InvalidInput("fidelity of a zero-norm state is undefined");
    if (std::abs(target.norm_squared() - 1.0) > 1e-9) {
        throw InvalidInput("fidelity target must be normalized");
    }
    const double f = std::norm(inner(target, psi)) / n;
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace atomq
