#include "atomq/dfs.hpp"

#include <algorithm>
#include <cmath>

namespace atomq {

namespace {

constexpr double kOrthonormalTolerance = 1e-12;

/// Orthonormal basis of ker(m), as columns.
Matrix kernel(const Matrix& m, double rel_tolerance) {
    const Eigen::Index n = m.cols();
    if (m.rows() == 0) return Matrix::Identity(n, n);
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double largest = s.size() > 0 ? s(0) : 0.0;
    Eigen::Index rank = 0;
    if (largest > 0.0) {
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            if (s(i) > rel_tolerance * largest) ++rank;
        }
    }
    return svd.matrixV().rightCols(n - rank);
}

Eigen::Index dominant_index(const Vector& v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (std::abs(v(i)) > std::abs(v(best)) + 1e-12) best = i;
    }
    return best;
}

void fix_phase(Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-9) {
            v *= std::conj(v(i)) / std::abs(v(i));
            v(i) = std::abs(v(i));
            return;
        }
    }
}

std::vector<StateVector> canonical_basis(const HilbertLayout& layout, const Matrix& projector,
                                         Eigen::Index rank) {
    std::vector<Vector> picked;
    const Eigen::Index n = projector.rows();
    for (Eigen::Index j = 0; j < n && static_cast<Eigen::Index>(picked.size()) < rank; ++j) {
        Vector r = projector.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& v : picked) r -= v * v.dot(r);
        }
        const double norm = r.norm();
        if (norm > 1e-6) {
            r /= norm;
            fix_phase(r);
            picked.push_back(std::move(r));
        }
    }
    std::stable_sort(picked.begin(), picked.end(), [](const Vector& a, const Vector& b) {
        return dominant_index(a) < dominant_index(b);
    });
    std::vector<StateVector> out;
    out.reserve(picked.size());
    for (auto& v : picked) out.emplace_back(layout, std::move(v));
    return out;
}

StateVector pair_state(const HilbertLayout& layout, std::size_t a, std::size_t b) {
    const double s = 1.0 / std::sqrt(2.0);
    return superpose(layout, {{s, {a, b, 0}}, {-s, {b, a, 0}}});
}

}  // namespace

SubspaceBasis::SubspaceBasis(HilbertLayout layout, std::vector<StateVector> vectors)
    : layout_(std::move(layout)), vectors_(std::move(vectors)), projector_(zero_operator(layout_)) {
    const auto n = static_cast<Eigen::Index>(layout_.total_dim());
    Matrix p = Matrix::Zero(n, n);
    for (const auto& v : vectors_) require_same_layout(layout_, v.layout(), "subspace basis");
    const Matrix q = basis_matrix();
    const Matrix gram = q.adjoint() * q;
    const auto k = static_cast<Eigen::Index>(vectors_.size());
    if (k > 0 && (gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > kOrthonormalTolerance) {
        throw InvalidInput("subspace basis is not orthonormal");
    }
    if (k > 0) p = q * q.adjoint();
    p = 0.5 * (p + p.adjoint());
    projector_ = OperatorMatrix(layout_, std::move(p), true);
}

Matrix SubspaceBasis::basis_matrix() const {
    const auto n = static_cast<Eigen::Index>(layout_.total_dim());
    Matrix q(n, static_cast<Eigen::Index>(vectors_.size()));
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        q.col(static_cast<Eigen::Index>(i)) = vectors_[i].amplitudes();
    }
    return q;
}

SubspaceBasis find_dfs(const OperatorMatrix& h_interaction,
                       const std::vector<OperatorMatrix>& decay_ops, const DfsOptions& options) {
    const HilbertLayout& layout = h_interaction.layout();
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    Matrix q = Matrix::Identity(n, n);
    if (!decay_ops.empty()) {
        Matrix stacked(n * static_cast<Eigen::Index>(decay_ops.size()), n);
        for (std::size_t i = 0; i < decay_ops.size(); ++i) {
            require_same_layout(layout, decay_ops[i].layout(), "find_dfs");
            stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = decay_ops[i].entries();
        }
        q = kernel(stacked, options.rel_tolerance);
    }

    const Matrix& h = h_interaction.entries();
    const double h_scale = h.norm();
    for (std::size_t iter = 0; iter < options.max_iterations && q.cols() > 0; ++iter) {
        const Matrix leak = h * q - q * (q.adjoint() * (h * q));
        if (h_scale == 0.0 || leak.norm() <= options.rel_tolerance * h_scale) break;
        // Keep the coefficient combinations whose image stays inside span(q).
        Eigen::BDCSVD<Matrix> svd(leak, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            if (s(i) > options.rel_tolerance * h_scale) ++rank;
        }
        if (rank == 0) break;
        const Matrix coeffs = svd.matrixV().rightCols(q.cols() - rank);
        q = q * coeffs;
    }

    Matrix p = q * q.adjoint();
    return {layout, canonical_basis(layout, p, q.cols())};
}

StateVector two_level_antisymmetric_state(const SystemSpec& spec) {
    if (spec.atom_levels != std::vector<std::size_t>{2, 2}) {
        throw InvalidInput("two-level antisymmetric state needs two 2-level atoms");
    }
    return pair_state(spec.layout(), level::two_level_excited, level::ground);
}

StateVector lambda_antisymmetric_state(const SystemSpec& spec) {
    if (spec.atom_levels != std::vector<std::size_t>{3, 3}) {
        throw InvalidInput("lambda antisymmetric state needs two 3-level atoms");
    }
    return pair_state(spec.layout(), 1, level::lambda_excited);
}

SubspaceBasis two_level_dfs_basis(const SystemSpec& spec) {
    const HilbertLayout layout = spec.layout();
    return {layout, {basis_state(layout, {0, 0, 0}), two_level_antisymmetric_state(spec)}};
}

SubspaceBasis lambda_dfs_basis(const SystemSpec& spec) {
    const HilbertLayout layout = spec.layout();
    return {layout,
            {basis_state(layout, {0, 0, 0}), basis_state(layout, {0, 1, 0}),
             basis_state(layout, {1, 0, 0}), basis_state(layout, {1, 1, 0}),
             lambda_antisymmetric_state(spec)}};
}

EffectiveHamiltonian effective_hamiltonian(const OperatorMatrix& h_cond, const SubspaceBasis& dfs) {
    require_same_layout(h_cond.layout(), dfs.layout(), "effective Hamiltonian");
    const Matrix& p = dfs.projector().entries();
    const Matrix q = dfs.basis_matrix();
    return {OperatorMatrix(h_cond.layout(), p * h_cond.entries() * p),
            q.adjoint() * h_cond.entries() * q};
}

double zeno_timescale(const SystemSpec& spec) {
    if (!(spec.kappa > 0.0)) throw InvalidInput("Zeno timescale needs kappa > 0");
    return std::max(1.0 / spec.kappa, spec.kappa / (spec.g * spec.g));
}

}  // namespace atomq
